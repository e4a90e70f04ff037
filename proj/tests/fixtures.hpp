#pragma once

#include "fibarc/presentation.hpp"
#include "support.hpp"

namespace testing_support {

// Generators at (1,0) and (0,1) identified at (1,1).
inline Presentation e2_presentation() {
    Presentation p;
    p.prime = 2;
    p.row_grades = {g(1, 0), g(0, 1)};
    p.col_grades = {g(1, 1)};
    p.columns = {{{0, {1}}, {1, {1}}}};
    return p;
}

// Free module on a chain of three generators, so there are no anchors.
inline Presentation free_presentation() {
    Presentation p;
    p.prime = 5;
    p.row_grades = {g(1, 2), g(0, 0), g(3, 3)};
    return p;
}

}  // namespace testing_support
