// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "cli_runner.hpp"
#include "support.hpp"
#include "unital/bloch.hpp"
#include "unital/canonical.hpp"
#include "unital/errors.hpp"
#include "unital/json_io.hpp"
#include "unital/mixed_unitary.hpp"

using namespace unital;
using namespace testing;

namespace {

struct Verdict {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) detail = what;
        pass = pass && ok;
    }
};

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

std::vector<double> half_spectrum(const QubitChannel& ch) {
    std::vector<double> h;
    for (double x : choi_spectrum(ch).lambdas) h.push_back(0.5 * std::max(x, 0.0));
    return h;
}

std::array<double, 4> sorted_spectrum(const QubitChannel& ch) { return sorted_desc(choi_spectrum(ch).lambdas); }

double reduction_residual(const QubitChannel& ch, const Canonicalization& c) {
    const ComplexMatrix2 ud = c.u.adjoint();
    const ComplexMatrix2 vd = c.v.adjoint();
    return pauli_basis_distance([&](const ComplexMatrix2& a) { return c.v * unital::apply(ch, c.u * a * ud) * vd; },
                                [&](const ComplexMatrix2& a) { return unital::apply(c.canonical, a); });
}

std::vector<std::size_t> random_permutation(std::size_t n, CounterRng& rng) {
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    for (std::size_t k = n; k > 1; --k) std::swap(p[k - 1], p[static_cast<std::size_t>(rng.uniform() * k) % k]);
    return p;
}

// First 1-based prefix where the sorted target sum exceeds the sorted bound sum, 0 if none.
// Returns -1 when some prefix sits within `margin` of the boundary.
long first_violation(std::vector<double> target, std::vector<double> bound, double margin) {
    const std::size_t n = std::max(target.size(), bound.size());
    target.resize(n, 0.0);
    bound.resize(n, 0.0);
    std::sort(target.begin(), target.end(), std::greater<>());
    std::sort(bound.begin(), bound.end(), std::greater<>());
    double st = 0.0, sb = 0.0;
    // The full sums agree, so only proper prefixes count.
    for (std::size_t k = 0; k + 1 < n; ++k) {
        st += target[k];
        sb += bound[k];
        if (std::abs(st - sb) < margin) return -1;
        if (st > sb) return static_cast<long>(k + 1);
    }
    return 0;
}

Verdict canonical_form() {
    Verdict v;
    double worst_template = 0.0, worst_reduction = 0.0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const QubitChannel ch = random_unital_channel(seed);
        const Canonicalization c = canonicalize(ch);
        const double t = max_abs_entry(to_choi(c.canonical).matrix - canonical_choi(c.spectrum));
        const double r = reduction_residual(ch, c);
        worst_template = std::max(worst_template, t);
        worst_reduction = std::max(worst_reduction, r);
        v.require(t <= 1e-8 && r <= 1e-8, "seed " + std::to_string(seed));
    }
    if (v.pass) v.detail = "200 channels, template " + fmt("%.1e", worst_template) + ", reduction " + fmt("%.1e", worst_reduction);
    return v;
}

Verdict equivalence() {
    Verdict v;
    CounterRng rng(2002);
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const QubitChannel a = random_unital_channel(500 + seed);
        const QubitChannel b = conjugate(a, random_unitary(rng), random_unitary(rng));
        const auto r = unitarily_equivalent(a, b);
        worst = std::max(worst, r.witness_residual);
        v.require(r.equivalent && r.witness_residual <= 1e-8, "conjugate pair " + std::to_string(seed));
    }
    int rejected = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const QubitChannel a = random_unital_channel(700 + seed);
        std::array<double, 4> s = sorted_spectrum(a);
        const double delta = 1e-3 + 0.02 * rng.uniform();
        // Raise or lower the top eigenvalue by delta so the sorted spectra differ by at least delta.
        std::size_t donor = 0;
        for (std::size_t k = 3; k >= 1; --k)
            if (s[k] >= delta) {
                donor = k;
                break;
            }
        if (donor != 0) {
            s[0] += delta;
            s[donor] -= delta;
        } else {
            s[0] -= delta;
            s[3] += delta;
        }
        const QubitChannel b = conjugated_canonical_channel(s, random_unitary(rng), random_unitary(rng));
        const auto r = unitarily_equivalent(a, b);
        v.require(!r.equivalent && r.spectral_gap >= 1e-3 - 1e-12, "perturbed pair " + std::to_string(seed));
        rejected += r.equivalent ? 0 : 1;
    }
    if (v.pass) v.detail = "100 accepted (witness " + fmt("%.1e", worst) + "), " + std::to_string(rejected) + " rejected";
    return v;
}

Verdict average_four() {
    Verdict v;
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const QubitChannel ch = random_unital_channel(900 + seed);
        const UnitaryDecomposition d = average_of_four(ch);
        bool quarter = d.weights.weights.size() == 4 && d.unitaries.size() == 4;
        for (double w : d.weights.weights) quarter = quarter && w == 0.25;
        const VerifyReport r = verify(d, ch);
        worst = std::max(worst, r.residual);
        v.require(quarter && r.unitaries_ok && r.residual <= 1e-8, "seed " + std::to_string(seed));
    }
    const UnitaryDecomposition dep = average_of_four(depolarizing_channel());
    // The printed construction gives a Pauli frame times a common unitary: U_j U_1* is a Pauli up to phase.
    std::vector<std::size_t> hit;
    for (const auto& u : dep.unitaries) {
        const ComplexMatrix2 rel = u * dep.unitaries[0].adjoint();
        for (std::size_t p = 0; p < 4; ++p)
            if (phase_distance(rel, pauli(p)) <= 1e-8) hit.push_back(p);
    }
    std::sort(hit.begin(), hit.end());
    v.require(hit == std::vector<std::size_t>{0, 1, 2, 3}, "depolarizing unitaries are not the Pauli frame");
    v.require(verify(dep, depolarizing_channel()).residual <= 1e-8, "depolarizing residual");
    if (v.pass) v.detail = "200 channels (residual " + fmt("%.1e", worst) + "), depolarizing gives a Pauli frame";
    return v;
}

Verdict majorization() {
    Verdict v;
    CounterRng rng(4004);
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const QubitChannel ch = random_unital_channel(1100 + seed);
        const std::vector<double> half = half_spectrum(ch);
        const std::size_t m = 4 + seed % 5;
        // Feasible target: the bound under a random doubly stochastic matrix (a mix of permutations).
        std::vector<double> padded = half;
        padded.resize(m, 0.0);
        std::vector<double> target(m, 0.0);
        std::vector<double> mix(3);
        for (double& c : mix) c = rng.exponential();
        const double total = mix[0] + mix[1] + mix[2];
        for (double c : mix) {
            const auto p = random_permutation(m, rng);
            for (std::size_t k = 0; k < m; ++k) target[k] += c / total * padded[p[k]];
        }
        try {
            const UnitaryDecomposition d = decompose(ch, {target});
            const VerifyReport r = verify(d, ch);
            worst = std::max(worst, r.residual);
            v.require(r.residual <= 1e-8 && r.unitaries_ok, "feasible seed " + std::to_string(seed) + " residual");
            v.require(majorizes(d.weights, {half}, 1e-10).holds, "weights not majorized, seed " + std::to_string(seed));
        } catch (const Error& e) {
            v.require(false, "feasible seed " + std::to_string(seed) + ": " + e.what());
        }
    }
    int infeasible = 0;
    for (std::uint64_t seed = 0; infeasible < 100 && seed < 10000; ++seed) {
        const QubitChannel ch = random_unital_channel(1400 + seed);
        const std::vector<double> half = half_spectrum(ch);
        const std::size_t m = 2 + seed % 7;
        std::vector<double> target(m);
        for (double& t : target) t = std::pow(rng.exponential(), 3.0);
        const double total = std::accumulate(target.begin(), target.end(), 0.0);
        for (double& t : target) t /= total;
        const long expected = first_violation(target, half, 1e-6);
        if (expected <= 0) continue;
        ++infeasible;
        try {
            decompose(ch, {target});
            v.require(false, "infeasible seed " + std::to_string(seed) + " was decomposed");
        } catch (const NotMajorizedError& e) {
            v.require(static_cast<long>(e.prefix()) == expected,
                      "infeasible seed " + std::to_string(seed) + ": prefix " + std::to_string(e.prefix()) +
                          ", expected " + std::to_string(expected));
        }
    }
    v.require(infeasible == 100, "could not draw 100 infeasible targets");
    if (v.pass) v.detail = "200 feasible (residual " + fmt("%.1e", worst) + "), 100 infeasible with matching prefix";
    return v;
}

Verdict uniform_rank() {
    Verdict v;
    CounterRng rng(5005);
    double worst = 0.0;
    for (std::size_t k = 1; k <= 4; ++k) {
        for (int trial = 0; trial < 10; ++trial) {
            std::array<double, 4> lambdas{};
            double total = 0.0;
            for (std::size_t j = 0; j < k; ++j) total += lambdas[j] = trial == 0 ? 1.0 : 0.05 + rng.uniform();
            for (double& x : lambdas) x *= 2.0 / total;
            const QubitChannel ch = conjugated_canonical_channel(lambdas, random_unitary(rng), random_unitary(rng));
            const std::string tag = "rank " + std::to_string(k) + " trial " + std::to_string(trial);
            for (std::size_t m = 1; m <= 8; ++m) {
                const WeightVector uniform{std::vector<double>(m, 1.0 / static_cast<double>(m))};
                try {
                    const UnitaryDecomposition d = decompose(ch, uniform);
                    const double r = verify(d, ch).residual;
                    worst = std::max(worst, r);
                    v.require(m >= k && r <= 1e-8, tag + " m " + std::to_string(m) + " residual " + fmt("%.1e", r));
                } catch (const NotMajorizedError&) {
                    v.require(m < k, tag + " m " + std::to_string(m) + " rejected");
                }
            }
        }
    }
    // Maximally mixed spectrum, three uniform weights: prefix 1/3 > 1/4.
    try {
        decompose(depolarizing_channel(), {{1.0 / 3, 1.0 / 3, 1.0 / 3}});
        v.require(false, "depolarizing with m = 3 was decomposed");
    } catch (const NotMajorizedError& e) {
        v.require(e.prefix() == 1, "depolarizing m = 3 prefix " + std::to_string(e.prefix()));
    }
    if (v.pass) v.detail = "ranks 1-4, m in 1..8, residual " + fmt("%.1e", worst);
    return v;
}

Verdict tetrahedron() {
    Verdict v;
    constexpr int n = 41;
    auto coord = [](int i) { return -1.0 + 2.0 * i / (n - 1); };
    long cells = 0, ordered_cells = 0, accepted = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const BlochScaling s{{coord(i), coord(j), coord(k)}};
                const bool tetra = is_channel_scaling(s, 1e-9).accepted;
                const bool psd = validate(diagonal_bloch_channel(s.d), 1e-9).completely_positive;
                ++cells;
                accepted += tetra ? 1 : 0;
                v.require(tetra == psd, "grid cell (" + std::to_string(i) + "," + std::to_string(j) + "," +
                                            std::to_string(k) + ") PSD disagreement");
                // Ordered subdomain d1 >= d2 >= |d3| on grid indices.
                const int k_abs = std::abs(k - (n - 1) / 2) + (n - 1) / 2;
                if (i >= j && j >= k_abs) {
                    ++ordered_cells;
                    v.require(ordered_cone_test(s, 1e-9) == tetra, "ordered cone disagreement");
                }
            }
    for (int g = 0; g <= 40; ++g) {
        const double gamma = g / 40.0;
        const bool ok = is_channel_scaling({{gamma, gamma, -gamma}}, 1e-9).accepted;
        v.require(ok == (3 * g <= 40), "gamma " + fmt("%.3f", gamma));
    }
    const double third = 1.0 / 3.0;
    v.require(is_channel_scaling({{third, third, -third}}, 1e-9).accepted, "gamma = 1/3 rejected");
    v.require(is_channel_scaling({{third - 1e-6, third - 1e-6, -(third - 1e-6)}}, 1e-9).accepted, "gamma below 1/3");
    v.require(!is_channel_scaling({{third + 1e-6, third + 1e-6, -(third + 1e-6)}}, 1e-9).accepted, "gamma above 1/3");
    if (v.pass) {
        v.detail = std::to_string(cells) + " cells (" + std::to_string(accepted) + " channels), " +
                   std::to_string(ordered_cells) + " ordered, flip at 1/3";
    }
    return v;
}

Verdict signed_permutations() {
    Verdict v;
    CounterRng rng(7007);
    std::vector<std::array<std::size_t, 3>> perms;
    std::array<std::size_t, 3> p{0, 1, 2};
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    int accepted = 0, rejected = 0;
    for (int t = 0; t < 100; ++t) {
        Vector3 d;
        do {
            for (double& x : d) x = 2.0 * rng.uniform() - 1.0;
        } while (std::abs(d[0] * d[1] * d[2]) < 1e-2);
        const auto base = sorted_spectrum(diagonal_bloch_channel(d));
        for (const auto& q : perms) {
            for (int mask = 0; mask < 8; ++mask) {
                // Equivalences are axis permutations with an even number of sign flips.
                int sign = 1;
                Vector3 e;
                for (std::size_t a = 0; a < 3; ++a) {
                    const double flip = (mask >> a) & 1 ? -1.0 : 1.0;
                    sign *= flip < 0 ? -1 : 1;
                    e[a] = flip * d[q[a]];
                }
                if (sign != 1) continue;
                ++accepted;
                v.require(scaling_equivalent({d}, {e}), "det 1 variant rejected");
                const auto s = sorted_spectrum(diagonal_bloch_channel(e));
                for (std::size_t k = 0; k < 4; ++k) v.require(std::abs(s[k] - base[k]) <= 1e-10, "spectra differ");
            }
        }
        // Odd number of sign flips on a random permutation: the product changes sign.
        const auto& q = perms[static_cast<std::size_t>(rng.uniform() * 6) % 6];
        const int flips = rng.uniform() < 0.5 ? 1 : 3;
        Vector3 e;
        for (std::size_t a = 0; a < 3; ++a) e[a] = d[q[a]];
        if (flips == 3) {
            for (double& x : e) x = -x;
        } else {
            const std::size_t a = static_cast<std::size_t>(rng.uniform() * 3) % 3;
            e[a] = -e[a];
        }
        const bool eq = scaling_equivalent({d}, {e});
        v.require(!eq, "det -1 variant accepted");
        rejected += eq ? 0 : 1;
    }
    v.require(accepted == 2400, "expected 24 det 1 variants per vector");
    if (v.pass) v.detail = std::to_string(accepted) + " det 1 variants accepted, " + std::to_string(rejected) + " det -1 rejected";
    return v;
}

Verdict counterexample() {
    Verdict v;
    const QubitChannel flat = diagonal_bloch_channel({1.0, 1.0, 0.0});
    v.require(max_abs_entry(to_choi(flat).matrix - flattening_choi()) <= 1e-15, "Choi matrix mismatch");
    const std::array<double, 4> expected{1.5, 0.5, 0.5, -0.5};
    const auto s = sorted_spectrum(flat);
    const auto direct = hermitian_eigen4(flattening_choi()).eigenvalues;
    for (std::size_t k = 0; k < 4; ++k) {
        v.require(std::abs(s[k] - expected[k]) <= 1e-12, "spectrum entry " + std::to_string(k));
        v.require(std::abs(direct[k] - expected[k]) <= 1e-12, "Jacobi entry " + std::to_string(k));
    }
    const ValidationReport r = validate(flat);
    v.require(!r.is_channel() && !r.completely_positive, "accepted as a channel");
    v.require(std::abs(r.min_choi_eigenvalue + 0.5) <= 1e-12, "witness is not -1/2");
    if (v.pass) v.detail = "eigenvalues {3/2, 1/2, 1/2, -1/2}, rejected with witness -1/2";
    return v;
}

Verdict kernel() {
    Verdict v;
    CounterRng rng(9009);
    double worst_eig = 0.0, worst_lift = 0.0, worst_choi = 0.0;
    for (int t = 0; t < 1000; ++t) {
        const ComplexMatrix4 a = random_hermitian4(rng);
        const auto e = hermitian_eigen4(a);
        std::array<Complex, 4> diag{};
        for (std::size_t k = 0; k < 4; ++k) diag[k] = e.eigenvalues[k];
        const double r =
            frobenius_distance(e.eigenvectors * ComplexMatrix4::diagonal(diag) * e.eigenvectors.adjoint(), a);
        worst_eig = std::max(worst_eig, r);
    }
    v.require(worst_eig <= 1e-10, "eigen reconstruction " + fmt("%.1e", worst_eig));
    for (int t = 0; t < 1000; ++t) {
        const RealMatrix3 rot = random_rotation(rng);
        const ComplexMatrix2 u = su2_from_so3(rot);
        worst_lift = std::max(worst_lift, frobenius_distance(adjoint_action(u), rot));
        v.require(std::abs(determinant(u) - 1.0) <= 1e-9, "lift is not in SU(2)");
    }
    v.require(worst_lift <= 1e-9, "lift residual " + fmt("%.1e", worst_lift));
    for (int t = 0; t < 100; ++t) {
        const KrausForm psi({random_matrix2(rng), random_matrix2(rng), random_matrix2(rng)});
        const ComplexMatrix2 u = random_unitary(rng);
        const ComplexMatrix2 w = random_unitary(rng);
        const ComplexMatrix4 g = kron(u.transpose(), w);
        const ComplexMatrix4 direct =
            choi_of([&](const ComplexMatrix2& a) { return w * unital::apply(psi, u * a * u.adjoint()) * w.adjoint(); });
        worst_choi = std::max(worst_choi, frobenius_distance(direct, g * to_choi(psi).matrix * g.adjoint()));
    }
    v.require(worst_choi <= 1e-9, "Choi conjugation " + fmt("%.1e", worst_choi));
    if (v.pass) {
        v.detail = "eigen " + fmt("%.1e", worst_eig) + ", lift " + fmt("%.1e", worst_lift) + ", Choi conjugation " +
                   fmt("%.1e", worst_choi);
    }
    return v;
}

Verdict cli_contract() {
    Verdict v;
    ScratchDir dir("unital_acceptance");
    const std::string dep = dir.write("dep.json", dump_channel(depolarizing_channel()));
    const std::string rnd = dir.write("rnd.json", dump_channel(random_unital_channel(7)));
    CounterRng rng(10010);
    const std::string conj =
        dir.write("conj.json", dump_channel(conjugate(random_unital_channel(7), random_unitary(rng), random_unitary(rng))));
    const std::string flat = dir.write("flat.json", dump_channel(diagonal_bloch_channel({1.0, 1.0, 0.0})));
    const std::string damping = dir.write(
        "damping.json",
        dump_channel(KrausForm({ComplexMatrix2{{1.0, 0.0}, {0.0, std::sqrt(0.7)}},
                                ComplexMatrix2{{0.0, std::sqrt(0.3)}, {0.0, 0.0}}})));
    const std::string broken = dir.write("broken.json", "{\"kind\": \"pauli\", \"data\": [0.25, 0.25");
    const std::string missing = dir.write("missing.json", "{\"kind\": \"kraus\"}");

    struct Case {
        std::string args;
        int code;
    };
    const std::vector<Case> cases{
        {"gen random --seed 7", 0},
        {"gen depolarizing", 0},
        {"gen pauli-mixing .5 .5 0 0", 0},
        {"gen pauli-mixing .5 .5 .5 0", 1},
        {"gen lindblad", 2},
        {"analyze " + dep, 0},
        {"analyze " + flat, 1},
        {"analyze " + broken, 2},
        {"canonicalize " + rnd, 0},
        {"canonicalize " + damping, 1},
        {"canonicalize " + missing, 2},
        {"equiv " + rnd + " " + conj, 0},
        {"equiv " + rnd + " " + dep, 1},
        {"equiv " + rnd + " " + broken, 2},
        {"decompose " + rnd + " --average 4", 0},
        {"decompose " + rnd + " --weights 0.4,0.3,0.2,0.1 --seed 3", -1},
        {"decompose " + dep + " --weights 1", 1},
        {"decompose " + broken + " --average 4", 2},
        {"decompose " + rnd, 2},
        {"bloch 0.5 0.3 0.2", 0},
        {"bloch 1 1 -1", 1},
        {"bloch 1 x 2", 2},
        {"--format human analyze " + dep, 0},
        {"--tolerance -1 bloch 0 0 0", 2},
    };
    int checked = 0;
    for (const auto& c : cases) {
        const CliResult first = run_cli(c.args);
        const CliResult second = run_cli(c.args);
        v.require(first.out == second.out && first.code == second.code, "nondeterministic: " + c.args);
        if (c.code >= 0) v.require(first.code == c.code, "exit " + std::to_string(first.code) + " for: " + c.args);
        else v.require(first.code == 0 || first.code == 1, "exit " + std::to_string(first.code) + " for: " + c.args);
        ++checked;
    }
    // gen output feeds back into analyze.
    const std::string generated = dir.write("gen.json", run_cli("gen random --seed 11").out);
    v.require(run_cli("analyze " + generated).code == 0, "gen output does not analyze cleanly");
    if (v.pass) v.detail = std::to_string(checked) + " invocations, byte-identical reruns, exit codes as documented";
    return v;
}

}  // namespace

int main() {
    const std::vector<std::function<Verdict()>> criteria{canonical_form, equivalence,        average_four,
                                                         majorization,   uniform_rank,       tetrahedron,
                                                         signed_permutations, counterexample, kernel,
                                                         cli_contract};
    int failures = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Verdict v;
        try {
            v = criteria[k]();
        } catch (const std::exception& e) {
            v.pass = false;
            v.detail = std::string("unexpected exception: ") + e.what();
        }
        std::printf("criterion %zu: %s  %s\n", k + 1, v.pass ? "PASS" : "FAIL", v.detail.c_str());
        failures += v.pass ? 0 : 1;
    }
    std::fflush(stdout);
    return failures == 0 ? 0 : 1;
}
