#pragma once
// Tiny check helpers shared by the test binaries: counters, tolerance
// comparisons, and a PASS/FAIL summary with nonzero exit on failure.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace testutil {

inline int g_checks = 0;
inline int g_failures = 0;

inline void record(bool ok, const char* what, const char* file, int line) {
    ++g_checks;
    if (!ok) {
        ++g_failures;
        std::printf("  FAIL %s:%d  %s\n", file, line, what);
    }
}

inline bool near(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

inline bool rel_near(double a, double b, double rel) {
    const double scale = std::fmax(std::fabs(a), std::fabs(b));
    return std::fabs(a - b) <= rel * scale;
}

inline int summary(const char* suite) {
    std::printf("%s: %d checks, %d failures -> %s\n", suite, g_checks, g_failures,
                g_failures == 0 ? "PASS" : "FAIL");
    return g_failures == 0 ? 0 : 1;
}

} // namespace testutil

#define CHECK(cond) testutil::record((cond), #cond, __FILE__, __LINE__)
#define CHECK_NEAR(a, b, tol) testutil::record(testutil::near((a), (b), (tol)), #a " ~ " #b, __FILE__, __LINE__)
#define CHECK_REL(a, b, rel) testutil::record(testutil::rel_near((a), (b), (rel)), #a " ~rel " #b, __FILE__, __LINE__)
#define CHECK_THROWS(expr)                                                                     \
    do {                                                                                       \
        bool threw_ = false;                                                                   \
        try {                                                                                  \
            (void)(expr);                                                                      \
        } catch (const std::exception&) {                                                      \
            threw_ = true;                                                                     \
        }                                                                                      \
        testutil::record(threw_, "expected throw: " #expr, __FILE__, __LINE__);                \
    } while (0)

#define RUN(fn)                                                                                \
    do {                                                                                       \
        std::printf("-- %s\n", #fn);                                                           \
        fn();                                                                                  \
    } while (0)
