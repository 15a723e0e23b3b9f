#include "ghcat/rational.hpp"

namespace ghcat {

Rat rat_parse(const std::string& s) {
    if (s.empty()) fail(ErrKind::InputError, "empty rational");
    for (char c : s) {
        if (!(c == '-' || c == '/' || (c >= '0' && c <= '9')))
            fail(ErrKind::InputError, "bad rational '" + s + "' (decimal-free p/q expected)");
    }
    mpq_class r;
    if (r.set_str(s, 10) != 0) fail(ErrKind::InputError, "bad rational '" + s + "'");
    if (r.get_den() == 0) fail(ErrKind::InputError, "zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
}

std::string rat_str(const Rat& r) { return r.get_str(); }

} // namespace ghcat
