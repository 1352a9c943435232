// SPDX-License-Identifier: Apache-2.0
//
// amafris: near-field fed RIS multibeam downlink simulator
// Copyright (C) 2026 The amafris Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace amafris
{

// Invalid configuration or infeasible experiment parameters.
class ValidationError : public std::invalid_argument
{
  public:
    ValidationError(std::string key, const std::string &what)
        : std::invalid_argument(key.empty() ? what : key + ": " + what), key_(std::move(key))
    {
    }
    [[nodiscard]] const std::string &key() const { return key_; }

  private:
    std::string key_;
};

// Numerical failure, e.g. a decomposition that did not converge.
class NumericalError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

} // namespace amafris
