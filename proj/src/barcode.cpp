#include "fibarc/barcode.hpp"

#include <algorithm>

namespace fibarc {

bool interval_less(const Interval& a, const Interval& b) {
    if (!(a.birth == b.birth)) return LexLess{}(a.birth, b.birth);
    return ext_lex_less(a.death, b.death);
}

void canonicalize(Barcode& b) { std::sort(b.begin(), b.end(), interval_less); }

std::string to_string(const Interval& i) { return "[" + i.birth.to_string() + ", " + to_string(i.death) + ")"; }

std::string to_string(const Barcode& b) {
    std::string out;
    for (const Interval& i : b) {
        if (!out.empty()) out += '\n';
        out += to_string(i);
    }
    return out;
}

}  // namespace fibarc
