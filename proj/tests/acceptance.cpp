// Acceptance suite: one PASS/FAIL line per criterion.
//
// With --expect-fail the exit status is 0 iff the failing criteria are exactly
// the listed ones, so known failures stay visible without breaking ctest.

#include "bdm/acceptance.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <set>
#include <vector>

int main(int argc, char **argv) {
    CLI::App app{"acceptance criteria"};
    std::vector<int> expect_fail;
    std::string out;
    std::uint64_t seed = 2024;
    app.add_option("--expect-fail", expect_fail, "criteria known to fail")->delimiter(',');
    app.add_option("--out", out, "also write the report CSV here");
    app.add_option("--seed", seed, "seed for randomized suites");
    CLI11_PARSE(app, argc, argv);

    bdm::AcceptanceOptions opt;
    opt.seed = seed;
    const bdm::Stopwatch clock;
    const auto reports = bdm::run_acceptance(opt);
    const std::string csv = bdm::to_csv(reports);
    auto criteria = bdm::evaluate_criteria(reports);

    const std::string again = bdm::to_csv(bdm::run_acceptance(opt));
    criteria.push_back({13, bdm::criterion_titles().at(13), csv == again,
                        std::to_string(csv.size()) + " bytes, " +
                            (csv == again ? "identical on a second run" : "second run differs")});

    std::set<int> failing;
    for (const auto &c : criteria) {
        std::cout << bdm::criterion_line(c) << '\n';
        if (!c.passed) {
            failing.insert(c.id);
        }
    }
    std::cout << "rows: " << std::count(csv.begin(), csv.end(), '\n') - 1 << ", elapsed " << clock.ms() << " ms\n";

    if (!out.empty()) {
        std::ofstream(out, std::ios::binary) << csv;
    }
    const std::set<int> expected(expect_fail.begin(), expect_fail.end());
    if (failing == expected) {
        if (!expected.empty()) {
            std::cout << "failing criteria match the expected set\n";
        }
        return 0;
    }
    std::cout << "failing criteria differ from the expected set:";
    for (int id : failing) {
        std::cout << ' ' << id;
    }
    std::cout << " (expected";
    for (int id : expected) {
        std::cout << ' ' << id;
    }
    std::cout << ")\n";
    return 1;
}
