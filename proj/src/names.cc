#include "model2plan/names.h"

#include <cctype>

using namespace std;

namespace model2plan {
namespace {
bool is_alpha(char c) {
    return isalpha(static_cast<unsigned char>(c)) != 0;
}

bool is_name_char(char c) {
    return isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '-';
}
}

bool is_pddl_name(string_view text) {
    if (text.empty() || !is_alpha(text[0]))
        return false;
    for (char c : text) {
        if (!is_name_char(c))
            return false;
    }
    return true;
}

string sanitize_name(string_view text) {
    string result;
    for (char c : text) {
        if (isspace(static_cast<unsigned char>(c)))
            result += '-';
        else if (static_cast<unsigned char>(c) < 0x80 && is_name_char(c))
            result += c;
    }
    // A name made only of separators carries no identity.
    bool has_alnum = false;
    for (char c : result)
        has_alnum = has_alnum || isalnum(static_cast<unsigned char>(c));
    if (!has_alnum)
        return "";
    if (!is_alpha(result[0]))
        result = "t-" + result;
    return result;
}

string to_lower(string_view text) {
    string result(text);
    for (char &c : result)
        c = static_cast<char>(tolower(static_cast<unsigned char>(c)));
    return result;
}

bool iequals(string_view a, string_view b) {
    if (a.size() != b.size())
        return false;
    for (size_t i = 0; i < a.size(); ++i) {
        if (tolower(static_cast<unsigned char>(a[i])) != tolower(static_cast<unsigned char>(b[i])))
            return false;
    }
    return true;
}

}
