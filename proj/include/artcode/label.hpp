#pragma once

#include <string>

namespace artcode {

enum class Label { non_artcode = 0, artcode = 1 };

std::string to_string(Label label);
Label label_from_string(const std::string& text);

} // namespace artcode
