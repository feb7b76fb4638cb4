#include "gspd/errors.hpp"

namespace gspd {

ConsistencyError::ConsistencyError(const std::string& what, std::size_t row, std::size_t col,
                                   double value)
    : std::logic_error(what), has_position_(true), row_(row), col_(col), value_(value) {}

ConsistencyError::ConsistencyError(const std::string& what, double min_eigenvalue)
    : std::logic_error(what), value_(min_eigenvalue) {}

}  // namespace gspd
