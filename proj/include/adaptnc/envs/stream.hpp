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

#include <cstdint>

#include "adaptnc/core.hpp"

namespace adaptnc::envs {

/// Common environment trait: a finite, seeded observation stream. Each
/// Observation already carries the point prediction produced by the
/// environment's predictor before its truth was realized. Streams are
/// bit-reproducible for a given seed.
class Stream {
public:
    virtual ~Stream() = default;

    virtual void reset(std::uint64_t seed) = 0;
    /// Throws StreamExhausted past the end.
    virtual Observation next() = 0;
    virtual bool done() const = 0;
    /// Total observations the stream will emit, including warmup.
    virtual std::size_t length() const = 0;
};

}  // namespace adaptnc::envs
