// One line per acceptance criterion; exit status 0 iff all ten pass.

#include <chrono>
#include <cstdio>

#include "darboux/verify.hpp"

int main() {
    using namespace darboux::verify;
    const Options opt;  // seed 7, unperturbed kernels
    int failed = 0;
    for (int id = 1; id <= 10; ++id) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto c = run_criterion(id, opt);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failed += !c.pass();
        std::printf("criterion %2d: %s  %s  (%.1fs)\n", id, c.pass() ? "PASS" : "FAIL", c.title.c_str(), secs);
        for (const auto& k : c.checks)
            std::printf("    [%s] %s: measured %.3g, tolerance %.3g%s%s\n", k.pass ? "ok" : "FAILED", k.name.c_str(),
                        k.measured, k.tolerance, k.detail.empty() ? "" : "; ", k.detail.c_str());
    }
    std::printf("%d/10 criteria pass\n", 10 - failed);
    return failed == 0 ? 0 : 1;
}
