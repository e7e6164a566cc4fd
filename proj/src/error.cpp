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

#include "ulafit/error.hpp"

namespace ulafit {

BelowMinimum::BelowMinimum(const std::string& geometry, long long requested, long long minimum)
    : DomainError(geometry + " requires N ≥ " + std::to_string(minimum) + " (got " +
                  std::to_string(requested) + ")"),
      requested_(requested), minimum_(minimum) {}

} // namespace ulafit
