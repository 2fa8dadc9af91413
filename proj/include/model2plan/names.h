#ifndef MODEL2PLAN_NAMES_H
#define MODEL2PLAN_NAMES_H

#include <string>
#include <string_view>

namespace model2plan {

// `[A-Za-z][A-Za-z0-9_-]*`
bool is_pddl_name(std::string_view text);

/*
  Maps a free-form model name onto the PDDL identifier alphabet: whitespace
  becomes '-', other characters outside [A-Za-z0-9_-] are dropped, and a
  result that does not start with a letter gets the prefix "t-". An input
  with no usable characters yields the empty string.
*/
std::string sanitize_name(std::string_view text);

std::string to_lower(std::string_view text);
bool iequals(std::string_view a, std::string_view b);

}

#endif
