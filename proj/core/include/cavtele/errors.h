// Copyright 2026 The cavtele Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CAVTELE_ERRORS_H
#define CAVTELE_ERRORS_H

#include <stdexcept>
#include <string>

namespace cavtele {

/// Argument outside the modelled domain (out-of-basis ket, unnormalized
/// qubit, negative rate, ...).
class DomainError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// A quantity that is mathematically undefined for the given input, e.g. a
/// mixing angle with both couplings zero or a fidelity with P = 0.
class UndefinedResult : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

/// The ODE integrator could not make progress. `time()` is the simulation
/// time in seconds at which it gave up.
class IntegrationFailure : public std::runtime_error {
   public:
    IntegrationFailure(const std::string &what, double time)
        : std::runtime_error(what), time_(time) {}

    double time() const noexcept { return time_; }

   private:
    double time_;
};

}  // namespace cavtele

#endif  // CAVTELE_ERRORS_H
