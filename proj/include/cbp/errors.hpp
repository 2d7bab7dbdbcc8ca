#ifndef CBP_ERRORS_HPP
#define CBP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cbp {

/// Raised when an exhaustive computation is asked to run past its configured
/// cap (instance too large for the oracle, state cap hit, ...).
class CapExceeded : public std::runtime_error {
public:
    explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cbp

#endif  // CBP_ERRORS_HPP
