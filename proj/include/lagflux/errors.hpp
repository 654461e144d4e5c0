#pragma once

#include <stdexcept>
#include <string>

namespace lagflux {

// Error taxonomy shared by all modules. Each maps to a nonzero CLI exit
// status with the message as diagnostic.

struct DegenerateClass : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct OutsideDomain : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InvalidPartition : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InvalidModel : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InvalidPair : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace lagflux
