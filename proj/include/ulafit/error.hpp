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

#pragma once

#include <stdexcept>
#include <string>

namespace ulafit {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Sub-ULAs overlap, share sensors, or violate the normalized-layout rules.
class InvalidGeometry : public Error {
public:
    using Error::Error;
};

/// An argument lies outside the domain of the operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A closed-form generator was asked for fewer sensors than it supports.
class BelowMinimum : public DomainError {
public:
    BelowMinimum(const std::string& geometry, long long requested, long long minimum);

    long long requested() const noexcept { return requested_; }
    long long minimum() const noexcept { return minimum_; }

private:
    long long requested_;
    long long minimum_;
};

class EmptyInput : public Error {
public:
    using Error::Error;
};

class PreconditionViolation : public Error {
public:
    using Error::Error;
};

class TooManySources : public Error {
public:
    using Error::Error;
};

/// The bounded gap enumeration would visit more candidates than allowed.
class SearchBudgetExceeded : public Error {
public:
    using Error::Error;
};

/// Configuration or input-file problems surfaced by the experiment runner.
class ConfigError : public Error {
public:
    using Error::Error;
};

class OutputError : public Error {
public:
    using Error::Error;
};

} // namespace ulafit
