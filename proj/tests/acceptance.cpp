// Acceptance gate: one pass/fail line per criterion, exit 0 iff all pass.
// argv[1] must be the path to the bbwalk CLI binary (used by criterion 9).

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "bbwalk/experiments.hpp"
#include "bbwalk/pauli.hpp"
#include "bbwalk/search.hpp"
#include "bbwalk/test_groups.hpp"

using namespace bbwalk;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& what) {
    std::printf("criterion %d: %s — %s\n", criterion, pass ? "PASS" : "FAIL", what.c_str());
    if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Report run_default(const std::string& name, int jobs = 1) {
    ExperimentConfig cfg;
    cfg.experiment = name;
    cfg.jobs = jobs;
    cfg.params["seed"] = std::uint64_t{20240901};
    return run_experiment(cfg);
}

// report file with the generated_at line removed
std::string stripped(const std::filesystem::path& path) {
    std::ifstream in(path);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line))
        if (line.find("generated_at") == std::string::npos) out << line << "\n";
    return out.str();
}

}  // namespace

int main(int argc, char** argv) {
    const int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

    {  // 1: exact subgroup-escape probabilities, all groups/subgroups/l, < 60 s
        const auto start = std::chrono::steady_clock::now();
        auto rep = run_default("lemma1-sweep");
        const double elapsed = seconds_since(start);
        bool groups_covered = true;
        for (const char* g : {"Z4", "Z2^3", "S3", "D4", "Q8"}) {
            bool seen = false;
            for (const auto& row : rep.rows) seen = seen || row.at("group") == g;
            groups_covered = groups_covered && seen;
        }
        report(1, rep.all_pass && groups_covered && elapsed < 60.0,
               "escape probability >= (1-p)/2 on every proper subgroup (" +
                   std::to_string(rep.rows.size()) + " exact checks, " +
                   std::to_string(elapsed) + " s)");
    }

    {  // 2: exact non-commuting-pair probabilities on nonabelian groups
        auto rep = run_default("lemma2-sweep");
        report(2, rep.all_pass && rep.rows.size() >= 18,
               "pair non-commutation probability >= (1-p)^2/4 (" +
                   std::to_string(rep.rows.size()) + " exact checks)");
    }

    {  // 3: spectral gaps and product-chain gaps
        auto rep = run_default("gap-sweep");
        report(3, rep.all_pass && rep.rows.size() == 4,
               "gap >= 1/(8 e l ln l), eigenvalues >= -1e-9, product gap equal");
    }

    {  // 4: coupling monotonicity and mean coalescence bound
        auto rep = run_default("coupling-sweep");
        report(4, rep.all_pass && rep.rows.size() == 4,
               "coupling distance monotone; mean time <= 2l(ln l + 1) + 3 se over 10^4 starts");
    }

    {  // 5: detection statistic across the calibration chain suite
        auto rep = run_default("szegedy-calibration");
        int non_empty_rows = 0;
        for (const auto& row : rep.rows)
            if (row.at("marked").get<int>() > 0) ++non_empty_rows;
        report(5, rep.all_pass && rep.rows.size() >= 10 && non_empty_rows >= 10,
               "empty statistic = 1, non-empty detected with C=3, theta=3/4; "
               "matrix-free matches dense (" + std::to_string(rep.rows.size()) + " instances)");
    }

    {  // 6: query ledger equals the raw oracle counter
        bool ok = true;
        std::string detail;
        try {
            AlgorithmConfig cfg;
            cfg.l = 2;
            cfg.seed = 13;
            for (const char* name : {"Z2xZ2", "S3-k4", "Q8-k4"}) {
                auto inst = named_test_group(name);
                // quantum_commutativity_sim replays an instrumented walk that
                // throws if the ledger and the counter ever disagree
                auto res = quantum_commutativity_sim(*inst.group, inst.generators, cfg);
                ok = ok && res.ledger.setup_S == 2 * (2 - 1);
                ok = ok && res.ledger.check_C == 2;
                ok = ok && res.ledger.max_step_update <= 8 * 1;  // 4 ceil(log2 l) per tuple
                ok = ok && res.ledger.total_queries ==
                               res.ledger.setup_S + res.ledger.update_queries +
                                   2 * res.ledger.checks;
            }
            for (const auto& name : test_group_names()) {
                auto inst = named_test_group(name);
                const int l = inst.generators.k() / 2;
                for (int trials : {1, 16, 64}) {
                    auto before = inst.group->counter().oracle_calls();
                    (void)randomized_commutativity_test(*inst.group, inst.generators, trials, 99);
                    ok = ok && inst.group->counter().oracle_calls() - before ==
                                   static_cast<std::uint64_t>(trials) *
                                       static_cast<std::uint64_t>(4 * (l - 1) + 2);
                }
            }
        } catch (const std::exception& ex) {
            ok = false;
            detail = std::string(" (") + ex.what() + ")";
        }
        report(6, ok, "setup = 2(l-1), step updates <= 4 ceil(log2 l) per tuple, check = 2, "
                      "total = counter; tester spends exactly trials*(4(k/2-1)+2)" + detail);
    }

    {  // 7: function-oracle reduction end to end
        auto rep = run_default("reduction-end-to-end", jobs);
        long long ops = 0;
        std::uint64_t worst = 0;
        for (const auto& row : rep.rows) {
            ops += row.at("ops_counted").get<long long>();
            worst = std::max(worst, row.at("max_op_queries").get<std::uint64_t>());
        }
        report(7, rep.all_pass && rep.rows.size() == 300 && ops >= 10000 && worst <= 4,
               "commutation = collision structure; <= 4 F-queries over " + std::to_string(ops) +
                   " operations; 64-trial decider correct on all 300 instances");
    }

    {  // 8: full simulated detection on six instances, each under 5 minutes
        const auto start = std::chrono::steady_clock::now();
        auto rep = run_default("quantum-sim-suite");
        const double elapsed = seconds_since(start);
        int abelian = 0, nonabelian = 0;
        for (const auto& row : rep.rows)
            (row.at("truth") == "commutative" ? abelian : nonabelian) += 1;
        report(8, rep.all_pass && abelian >= 2 && nonabelian >= 4 && elapsed < 6 * 300.0,
               "correct verdicts on " + std::to_string(rep.rows.size()) +
                   " instances incl. a function-oracle group (" + std::to_string(elapsed) + " s)");
    }

    {  // 9: byte-identical reports modulo the timestamp field
        bool ok = true;
        std::string detail = "verify-all twice produces byte-identical reports modulo timestamps";
        if (argc < 2) {
            ok = false;
            detail += " (missing CLI path argument)";
        } else {
            namespace fs = std::filesystem;
            const fs::path base = fs::temp_directory_path() / "bbwalk_acceptance";
            fs::remove_all(base);
            fs::create_directories(base);
            const fs::path d1 = base / "run1", d2 = base / "run2";
            const std::string cli = argv[1];
            for (const auto& dir : {d1, d2}) {
                const std::string cmd = "\"" + cli + "\" verify-all --seed 7 --jobs " +
                                        std::to_string(jobs) + " --output-dir \"" +
                                        dir.string() + "\" > \"" + (dir.string() + ".log") + "\"";
                if (std::system(cmd.c_str()) != 0) ok = false;
            }
            int compared = 0;
            if (ok) {
                for (const auto& entry : fs::directory_iterator(d1)) {
                    const auto other = d2 / entry.path().filename();
                    if (!fs::exists(other) || stripped(entry.path()) != stripped(other)) {
                        ok = false;
                        detail += " (mismatch: " + entry.path().filename().string() + ")";
                        break;
                    }
                    ++compared;
                }
                ok = ok && compared >= 14;  // json + csv per experiment
            }
            fs::remove_all(base);
        }
        report(9, ok, detail);
    }

    if (failures == 0) std::printf("all acceptance criteria passed\n");
    return failures == 0 ? 0 : 1;
}
