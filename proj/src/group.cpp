#include "abeltomo/group.hpp"

#include <algorithm>
#include <set>

namespace abeltomo {

bool is_prime(int n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (int d = 3; d * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

CyclicGroup::CyclicGroup(int n) : n_(n), prime_(abeltomo::is_prime(n)) {
    if (n < 2) throw InvalidGroup("cyclic group needs n >= 2, got " + std::to_string(n));
}

bool LineSubgroup::contains(PhasePoint p) const {
    return std::find(points.begin(), points.end(), p) != points.end();
}

LineSubgroup line_subgroup(int l, const CyclicGroup& grp) {
    const int n = grp.n();
    if (l < 0 || l > n) {
        throw IndexError("line index " + std::to_string(l) + " outside [0, " + std::to_string(n) + "]");
    }
    LineSubgroup line{l, {}};
    line.points.reserve(n);
    for (int k = 0; k < n; ++k) {
        if (l < n) {
            line.points.push_back({mod(std::int64_t(k) * l, n), k});
        } else {
            line.points.push_back({k, 0});
        }
    }
    return line;
}

bool CoverReport::trivial_intersections() const {
    for (std::size_t a = 0; a < intersection_sizes.size(); ++a) {
        for (std::size_t b = 0; b < intersection_sizes.size(); ++b) {
            if (a != b && intersection_sizes[a][b] != 1) return false;
        }
    }
    return true;
}

CoverReport cover_report(const CyclicGroup& grp) {
    const int n = grp.n();
    std::vector<std::set<PhasePoint>> lines;
    lines.reserve(n + 1);
    for (int l = 0; l <= n; ++l) {
        const auto line = line_subgroup(l, grp);
        lines.emplace_back(line.points.begin(), line.points.end());
    }

    CoverReport report;
    report.n = n;
    report.intersection_sizes.assign(n + 1, std::vector<int>(n + 1, 0));
    for (int a = 0; a <= n; ++a) {
        for (int b = 0; b <= n; ++b) {
            int count = 0;
            for (const auto& p : lines[a]) count += static_cast<int>(lines[b].count(p));
            report.intersection_sizes[a][b] = count;
        }
    }
    for (int chi = 0; chi < n; ++chi) {
        for (int g = 0; g < n; ++g) {
            const PhasePoint p{chi, g};
            const bool hit = std::any_of(lines.begin(), lines.end(),
                                         [&](const auto& s) { return s.count(p) > 0; });
            if (hit) {
                ++report.covered;
            } else {
                report.uncovered.push_back(p);
            }
        }
    }
    return report;
}

}  // namespace abeltomo
