// Copyright 2026 The fracpow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace fracpow {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Operand dimensions or register layouts do not line up.
class DimensionError : public Error {
  public:
    using Error::Error;
};

/// A configured width or dimension limit would be exceeded.
class ResourceLimitError : public Error {
  public:
    using Error::Error;
};

/// A black-box capability (plain, controlled, inverse) is disabled.
class CapabilityError : public Error {
  public:
    using Error::Error;
};

/// Input violates a documented precondition or invariant.
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// A numeric premise of an algorithm is not met; carries the bound that is.
class PremiseError : public ValidationError {
  public:
    PremiseError(const std::string &what, int required_m)
        : ValidationError(what), required_m_(required_m) {}
    [[nodiscard]] int required_m() const noexcept { return required_m_; }

  private:
    int required_m_;
};

} // namespace fracpow
