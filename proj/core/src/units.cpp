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

#include "amafris/units.hpp"

namespace amafris
{

double to_db(double linear_power) { return 10.0 * std::log10(linear_power); }

double from_db(double db) { return std::pow(10.0, db / 10.0); }

double watts_to_dbm(double watts) { return to_db(watts) + 30.0; }

double dbm_to_watts(double dbm) { return from_db(dbm - 30.0); }

double wrap_phase(double phase)
{
    double w = std::fmod(phase + kPi, 2.0 * kPi);
    if (w < 0.0)
        w += 2.0 * kPi;
    w -= kPi;
    // fmod can land exactly on +pi after the shift
    return w >= kPi ? w - 2.0 * kPi : w;
}

} // namespace amafris
