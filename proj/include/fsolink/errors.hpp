#pragma once

#include <stdexcept>

namespace fsolink {

// A numeric input outside the valid domain of a model formula.
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A structurally invalid scenario, sweep definition, or invocation.
class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A broken internal invariant; indicates a bug rather than bad input.
class internal_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace fsolink
