#pragma once

#include <string>

namespace hdj {

/// The shared 12-significant-digit scientific float format ("%.11e") used by
/// every persisted JSON and CSV value; negative zero is normalized.
std::string format_sci(double v);

}  // namespace hdj
