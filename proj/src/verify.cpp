#include "abeltomo/verify.hpp"

#include <algorithm>
#include <set>

#include "abeltomo/random.hpp"

namespace abeltomo {

bool VerifyReport::all_pass() const {
    return std::all_of(properties.begin(), properties.end(), [](const auto& p) { return p.pass; });
}

std::string VerifyReport::failures() const {
    std::string out;
    for (const auto& p : properties) {
        if (p.pass) continue;
        if (!out.empty()) out += ",";
        out += p.name;
    }
    return out;
}

nlohmann::json VerifyReport::to_json(const VerifyOptions& opts) const {
    nlohmann::json props = nlohmann::json::array();
    for (const auto& p : properties) {
        props.push_back({{"name", p.name},
                         {"ensemble", p.ensemble},
                         {"max_defect", p.max_defect},
                         {"tolerance", p.tolerance},
                         {"pass", p.pass}});
    }
    return {{"tool", "tomoctl"},
            {"command", "verify"},
            {"rng", Rng::kAlgorithm},
            {"seed", opts.seed},
            {"dimensions", opts.dimensions},
            {"ensemble", opts.ensemble},
            {"fault_injected", opts.inject_phase_fault},
            {"properties", props},
            {"all_pass", all_pass()}};
}

namespace {

struct Tally {
    std::string name;
    double tolerance;
    int count = 0;
    double worst = 0;

    void record(double defect) {
        ++count;
        // NaN must fail, so compare negated.
        if (!(defect <= worst)) worst = defect;
    }

    PropertyResult result() const { return {name, count, worst, tolerance, worst < tolerance}; }
};

Rng property_rng(std::uint64_t seed, int index) { return Rng(seed + 0x9E3779B97F4A7C15ULL * (index + 1)); }

}  // namespace

VerifyReport run_verification(const VerifyOptions& opts) {
    const auto tol = [&](double def) { return opts.tolerance.value_or(def); };
    std::vector<int> odd_primes;
    for (int n : opts.dimensions) {
        if (is_prime(n) && n % 2 == 1) odd_primes.push_back(n);
    }
    VerifyReport report;

    {
        Tally t{"projective-identity", tol(1e-10)};
        std::set<int> dims{2, 3, 4, 5};
        dims.insert(opts.dimensions.begin(), opts.dimensions.end());
        bool fault_pending = opts.inject_phase_fault;
        for (int n : dims) {
            const CyclicGroup grp(n);
            std::vector<CMatrixd> d;
            for (int chi = 0; chi < n; ++chi)
                for (int g = 0; g < n; ++g) d.push_back(displacement<double>({chi, g}, grp));
            const auto at = [&](PhasePoint p) -> const CMatrixd& { return d[p.chi * n + p.g]; };
            for (int a = 0; a < n * n; ++a) {
                for (int b = 0; b < n * n; ++b) {
                    const PhasePoint p1{a / n, a % n};
                    const PhasePoint p2{b / n, b % n};
                    auto cocycle = std::conj(pairing<double>(p2.chi, p1.g, grp));
                    if (fault_pending && p1 == PhasePoint{1, 0} && p2 == PhasePoint{0, 1}) {
                        cocycle *= std::polar(1.0, 1e-6);
                        fault_pending = false;
                    }
                    t.record(max_abs(at(add(p1, p2, grp)) - cocycle * at(p1) * at(p2)));
                }
            }
        }
        report.properties.push_back(t.result());
    }

    {
        Tally t{"parseval", tol(1e-10)};
        Rng rng = property_rng(opts.seed, 1);
        std::set<int> dims{2};
        dims.insert(opts.dimensions.begin(), opts.dimensions.end());
        for (int n : dims) {
            const CyclicGroup grp(n);
            for (int s = 0; s < opts.ensemble; ++s) t.record(parseval_defect(random_operator(n, rng), grp));
        }
        report.properties.push_back(t.result());
    }

    {
        Tally t{"mub-unbiased", tol(1e-10)};
        for (int n : odd_primes) {
            const CyclicGroup grp(n);
            std::vector<CMatrixd> bases;
            for (int l = 0; l <= n; ++l) bases.push_back(mub_basis<double>(l, grp).vectors);
            for (int l = 0; l <= n; ++l) {
                t.record(unitarity_defect(bases[l]));
                for (int m = l + 1; m <= n; ++m) {
                    const CMatrixd overlaps = bases[l].adjoint() * bases[m];
                    t.record((overlaps.cwiseAbs2().array() - 1.0 / n).abs().maxCoeff());
                }
            }
        }
        report.properties.push_back(t.result());
    }

    {
        Tally eq{"tomogram-equivalence", tol(1e-10)};
        Tally st{"tomogram-stochastic", tol(1e-10)};
        Rng rng = property_rng(opts.seed, 3);
        for (int n : odd_primes) {
            const CyclicGroup grp(n);
            for (int s = 0; s < opts.ensemble; ++s) {
                const CMatrixd rho = projector(random_state_vector(n, rng));
                const auto dft = tomogram(rho, grp);
                const auto overlap = overlap_tomogram(rho, grp);
                eq.record(max_abs(dft.rows - overlap.rows));
                const auto [sum_defect, min_entry] = tomogram_defects(dft);
                st.record(std::max(sum_defect, -min_entry));
            }
        }
        report.properties.push_back(eq.result());
        report.properties.push_back(st.result());
    }

    {
        Tally t{"reconstruction", tol(1e-8)};
        Rng rng = property_rng(opts.seed, 4);
        for (int n : odd_primes) {
            const CyclicGroup grp(n);
            for (int s = 0; s < opts.ensemble; ++s) {
                const CMatrixd rho = random_density_matrix(n, rng);
                t.record(max_abs(reconstruct_from_tomogram(tomogram(rho, grp), grp) - rho));
            }
        }
        report.properties.push_back(t.result());
    }

    {
        Tally chr{"output-char", tol(1e-10)};
        Tally tom{"output-tomogram", tol(1e-8)};
        Rng rng = property_rng(opts.seed, 5);
        for (int n : odd_primes) {
            const CyclicGroup grp(n);
            for (int s = 0; s < opts.ensemble; ++s) {
                const auto ch = random_channel(n, rng);
                const CMatrixd rho = projector(random_state_vector(n, rng));
                const CMatrixd out = apply(ch, rho, grp);
                chr.record(max_abs(output_char(ch, phi(rho, grp), grp).values - phi(out, grp).values));
                const auto t_in = tomogram(rho, grp);
                const auto direct = tomogram(apply(ch, reconstruct_from_tomogram(t_in, grp), grp), grp);
                tom.record(max_abs(output_tomogram(ch, t_in, grp).rows - direct.rows));
            }
        }
        report.properties.push_back(chr.result());
        report.properties.push_back(tom.result());
    }

    return report;
}

}  // namespace abeltomo
