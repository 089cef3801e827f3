#pragma once

#include <string>

#include "smc/io.hpp"

namespace smc::fixtures {

inline const char* kFixA =
    "kind: smc\n"
    "men: m1 m2\n"
    "women: w1 w2\n"
    "pref m1: w1 w2\n"
    "pref m2: w1\n"
    "pref w1: m1 m2\n"
    "pref w2: m1\n"
    "star-women: w2\n"
    "star-men:\n";

inline const char* kFixB =
    "kind: smc\n"
    "men: m1\n"
    "women: w1 w2\n"
    "pref m1: w1 w2\n"
    "pref w1: m1\n"
    "pref w2: m1\n"
    "star-women: w1 w2\n"
    "star-men:\n";

inline const char* kFixC =
    "kind: hrlq\n"
    "residents: r1 r2\n"
    "hospitals: h1[1,1] h2[1,1]\n"
    "pref r1: h1 h2\n"
    "pref r2: h1\n"
    "pref h1: r1 r2\n"
    "pref h2: r1\n";

inline const char* kFixE =
    "kind: smc\n"
    "men: m1 m2\n"
    "women: w1 w2\n"
    "pref m1: w1 w2\n"
    "pref m2: w1\n"
    "pref w1: m1 m2\n"
    "pref w2: m1\n"
    "star-women:\n"
    "star-men: m2\n";

inline SmcInstance fix_a() { return parse_smc(kFixA); }
inline SmcInstance fix_b() { return parse_smc(kFixB); }
inline HrlqInstance fix_c() { return parse_hrlq(kFixC); }
inline SmcInstance fix_e() { return parse_smc(kFixE); }
// FIX-A with the sides exchanged, so that women have lists of length <= 2.
inline SmcInstance fix_a_swapped() { return fix_a().swapped(); }

}  // namespace smc::fixtures
