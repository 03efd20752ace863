// One line per reproduction check; exit status is nonzero if any check fails.

#include <iostream>

#include "chebgap/claims.hpp"

int main() {
    int failed = 0;
    chebgap::ClaimOptions opt;
    for (const auto& spec : chebgap::claim_specs()) {
        const auto r = chebgap::run_claim(spec.id, opt);
        std::cout << chebgap::format_claim(r) << std::endl;
        failed += r.status == chebgap::ClaimStatus::fail;
    }
    std::cout << (failed ? std::to_string(failed) + " check(s) failed" : std::string("all checks passed")) << std::endl;
    return failed ? 1 : 0;
}
