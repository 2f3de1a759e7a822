// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef AGEDBF_ERROR_HPP
#define AGEDBF_ERROR_HPP

#include <stdexcept>
#include <string>

// Invalid arguments are reported with std::invalid_argument and lookups
// outside a supported range with std::out_of_range. The types below cover
// the domain-specific failure modes.

namespace agedbf {

/// The channel realization cannot support the requested beamformer
/// (zero row, zero row-sum, rank deficiency).
class DegenerateChannelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an operation needs a random gain but sigma_omega^2 == 0.
class DeterministicGainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// No transmit power or lag satisfies the reliability requirement.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or incomplete experiment configuration.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::runtime_error(what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace agedbf

#endif  // AGEDBF_ERROR_HPP
