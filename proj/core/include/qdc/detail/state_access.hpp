// Copyright 2026 The qdc authors.
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

#include "qdc/state.hpp"

namespace qdc::detail {

// Internal constructor backdoor for the gate/measurement engines, which
// produce amplitudes that are normalized by construction. Not part of the
// public API.
struct StateAccess {
    static PureState make(int qubit_count, std::array<Complex, 4> amps) {
        return PureState(qubit_count, amps);
    }
};

} // namespace qdc::detail
