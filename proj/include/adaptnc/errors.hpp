// Copyright 2026 The AdaptNC Authors
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

namespace adaptnc {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Quantile or rank requested from a window holding no scores.
struct EmptyWindow : Error {
    using Error::Error;
};

/// Halfspace intersection collapsed where a valid bounded region must exist.
struct DegenerateGeometry : Error {
    using Error::Error;
};

/// Hull construction given fewer than 3 effective points or collinear input.
struct DegenerateInput : Error {
    using Error::Error;
};

struct InvalidInput : Error {
    using Error::Error;
};

/// Split conformal quantile index exceeds the calibration sample size.
struct InsufficientCalibration : Error {
    using Error::Error;
};

struct InsufficientHistory : Error {
    using Error::Error;
};

struct StreamExhausted : Error {
    using Error::Error;
};

struct EmptyRun : Error {
    using Error::Error;
};

struct WindowTooLarge : Error {
    using Error::Error;
};

/// Report aggregation found gaps in the (method, env) grid.
struct MissingRuns : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

}  // namespace adaptnc
