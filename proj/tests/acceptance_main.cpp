// Acceptance harness: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Budgets are wall-clock upper bounds; a run that exceeds one
// fails the criterion even if every instance agreed.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qcsp/qcsp.hpp"

using namespace qcsp;

namespace {

struct Outcome {
    bool ok = true;
    std::size_t checked = 0;
    std::string note;  // first failure detail, or extra context on success
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Outcome from_report(const SuiteReport& report) {
    Outcome r;
    r.checked = report.checked;
    if (!report.ok()) {
        r.ok = false;
        const Discrepancy& d = report.discrepancies.front();
        r.note = std::to_string(report.discrepancies.size()) + " discrepancies, first [" +
                 d.fixture + "]: " + d.detail;
    }
    return r;
}

Outcome criterion1() {
    return from_report(verify_microcosm_forward(500, 0));
}

Outcome criterion2() {
    return from_report(verify_microcosm_backward(500, 0));
}

Outcome criterion3() {
    return from_report(verify_chen(0));
}

Outcome criterion4() {
    Outcome r;
    const std::vector<std::pair<std::string, Structure>> havers = {
        {"K2", fixtures::k2()}, {"U2", fixtures::u2()}, {"L1", fixtures::l1()}};
    for (const auto& [name, b] : havers) {
        auto start = std::chrono::steady_clock::now();
        auto f = find_nu(b, 3);
        double t = seconds_since(start);
        ++r.checked;
        if (!f) {
            r.ok = false;
            r.note = "find_nu(" + name + ",3) found nothing";
            return r;
        }
        if (!is_polymorphism(b, *f) || !is_near_unanimity(*f)) {
            r.ok = false;
            r.note = "find_nu(" + name + ",3) returned a bad table";
            return r;
        }
        if (t > 10.0) {
            r.ok = false;
            r.note = "find_nu(" + name + ",3) took " + std::to_string(t) + " s (limit 10)";
            return r;
        }
    }
    auto start = std::chrono::steady_clock::now();
    auto none = find_nu(fixtures::k3(), 3);
    double t = seconds_since(start);
    ++r.checked;
    if (none) {
        r.ok = false;
        r.note = "find_nu(K3,3) found a table; K3 has no majority polymorphism";
        return r;
    }
    if (t > 60.0) {
        r.ok = false;
        r.note = "find_nu(K3,3) took " + std::to_string(t) + " s (limit 60)";
        return r;
    }
    Outcome agree = from_report(verify_collapse(500, 0));
    agree.checked += r.checked;
    return agree;
}

Outcome criterion5() {
    return from_report(verify_dlambda(0));
}

Outcome criterion6() {
    return from_report(verify_cvalidity(1000, 200, 0));
}

Outcome criterion7() {
    Outcome r;
    Structure padded(Signature({{"E", 2}}), 3);
    padded.add_tuple("E", {0, 1});
    padded.add_tuple("E", {1, 0});
    if (!is_isomorphic(core_of(padded), fixtures::k2())) {
        r.ok = false;
        r.note = "core_of(K2 + isolated vertex) is not K2";
        return r;
    }
    ++r.checked;
    for (int m = 1; m <= 3; ++m) {
        const int cells = m * m;
        for (std::uint32_t mask = 0; mask < (1u << cells); ++mask) {
            Structure s(Signature({{"E", 2}}), m);
            for (int i = 0; i < cells; ++i)
                if (mask & (1u << i)) s.add_tuple(0, {i / m, i % m});
            ++r.checked;
            if (is_core(s) != oracle::brute_force_is_core(s)) {
                r.ok = false;
                std::ostringstream what;
                what << "is_core disagrees with the oracle on m=" << m << " mask=" << mask;
                r.note = what.str();
                return r;
            }
        }
    }
    return r;
}

Outcome criterion8() {
    return from_report(verify_fo(0));
}

struct Criterion {
    int number;
    std::string title;
    double limit_s;  // 0 = no explicit wall-clock budget
    std::function<Outcome()> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "microcosm forward equivalence", 300.0, criterion1},
        {2, "microcosm backward equivalence", 0.0, criterion2},
        {3, "Chen reduction csp/qcsp agreement", 120.0, criterion3},
        {4, "near-unanimity search and collapsibility pipeline", 0.0, criterion4},
        {5, "collapse structure D(lambda) semantics", 0.0, criterion5},
        {6, "microcosm c-validity", 0.0, criterion6},
        {7, "core machinery vs brute force", 120.0, criterion7},
        {8, "first-order cross-check on canonical databases", 0.0, criterion8},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        Outcome result;
        auto start = std::chrono::steady_clock::now();
        try {
            result = c.run();
        } catch (const std::exception& e) {
            result.ok = false;
            result.note = std::string("exception: ") + e.what();
        }
        double elapsed = seconds_since(start);
        if (result.ok && c.limit_s > 0.0 && elapsed > c.limit_s) {
            result.ok = false;
            std::ostringstream what;
            what << "exceeded the " << c.limit_s << " s budget";
            result.note = what.str();
        }
        failures += result.ok ? 0 : 1;
        std::printf("%s criterion %d: %s (%zu instances, %.1f s)%s%s\n",
                    result.ok ? "PASS" : "FAIL", c.number, c.title.c_str(), result.checked,
                    elapsed, result.note.empty() ? "" : " - ", result.note.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
