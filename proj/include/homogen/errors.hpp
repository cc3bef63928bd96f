#pragma once

#include <stdexcept>
#include <string>

namespace homogen {

// Error taxonomy mirrored by the CLI exit codes: input 2, capacity 3,
// integrity 4. Negative verdicts are ordinary return values, not errors.

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A violated consequence of the construction rules. Reaching one of these
// means a bug in this library, never bad user input; the test suite treats
// it as build-stopping.
struct IntegrityError : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace homogen
