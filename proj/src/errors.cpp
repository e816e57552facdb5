#include "vsw/errors.hpp"

namespace vsw {

ConfigError::ConfigError(const std::string& field, const std::string& what)
    : ValidationError(field + ": " + what), field_(field) {}

} // namespace vsw
