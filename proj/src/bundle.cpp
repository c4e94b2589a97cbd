#include "parop/bundle.hpp"

#include <algorithm>
#include <functional>

namespace parop {

namespace {

void sort_descending(std::vector<Rat>& w) {
    std::sort(w.begin(), w.end(), [](const Rat& a, const Rat& b) { return b < a; });
}

void check_same_curve(const LocallyAbelianBundle& a, const LocallyAbelianBundle& b) {
    require(a.curve() == b.curve(), "CurveMismatch",
            "operands live on different marked curves");
}

// binomial(n, k) in int64 with overflow checking through Rat.
i64 binomial(i64 n, i64 k) {
    if (k < 0 || k > n) return 0;
    Rat r(1);
    for (i64 j = 1; j <= k; ++j) r = r * Rat(n - k + j) / Rat(j);
    require(r.is_integer(), "Internal", "binomial must be integral");
    return r.num();
}

// Enumerates all size-k multisets of {0,...,r-1} as index vectors
// 0 <= i_1 <= ... <= i_k < r and feeds them to `visit`.
void for_each_multiset(int r, int k, const std::function<void(const std::vector<int>&)>& visit) {
    std::vector<int> idx(k, 0);
    if (k == 0) { visit(idx); return; }
    while (true) {
        visit(idx);
        int pos = k - 1;
        while (pos >= 0 && idx[pos] == r - 1) --pos;
        if (pos < 0) break;
        int next = idx[pos] + 1;
        for (int j = pos; j < k; ++j) idx[j] = next;
    }
}

} // namespace

LocallyAbelianBundle::LocallyAbelianBundle(CurvePtr curve, int rank, i64 degree,
                                           std::vector<std::vector<Rat>> weights)
    : curve_(std::move(curve)), rank_(rank), degree_(degree), weights_(std::move(weights)) {
    require(curve_ != nullptr, "InvalidArgument", "bundle needs a curve");
    require(rank_ >= 1, "InvalidArgument", "rank must be >= 1");
    require(weights_.size() == curve_->size(), "InvalidArgument",
            "need one weight multiset per marked point");
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        auto& w = weights_[i];
        require(static_cast<int>(w.size()) == rank_, "InvalidArgument",
                "weight multiset size must equal the rank at '" + curve_->points[i].label + "'");
        for (const auto& x : w) {
            require(Rat(0) <= x && x < Rat(1), "InvalidArgument",
                    "weight " + x.str() + " outside [0,1)");
            require((x * Rat(curve_->points[i].level)).is_integer(), "InvalidArgument",
                    "weight " + x.str() + " is not a multiple of 1/" +
                        std::to_string(curve_->points[i].level) + " at '" +
                        curve_->points[i].label + "'");
        }
        sort_descending(w);
    }
}

Rat LocallyAbelianBundle::par_deg() const {
    Rat s(degree_);
    for (const auto& w : weights_)
        for (const auto& x : w) s += x;
    return s;
}

LocallyAbelianBundle trivial_line(CurvePtr curve) { return weightless_line(std::move(curve), 0); }

LocallyAbelianBundle weightless_line(CurvePtr curve, i64 degree) {
    std::vector<std::vector<Rat>> w(curve->size(), std::vector<Rat>{Rat(0)});
    return LocallyAbelianBundle(std::move(curve), 1, degree, std::move(w));
}

LocallyAbelianBundle dual(const LocallyAbelianBundle& v) {
    std::vector<std::vector<Rat>> w;
    w.reserve(v.curve().size());
    i64 degree = -v.degree();
    for (std::size_t i = 0; i < v.curve().size(); ++i) {
        std::vector<Rat> row;
        row.reserve(v.rank());
        for (const auto& x : v.weights_at(i)) {
            if (x.is_zero()) {
                row.push_back(Rat(0));
            } else {
                row.push_back(Rat(1) - x);
                degree -= 1;
            }
        }
        w.push_back(std::move(row));
    }
    return LocallyAbelianBundle(v.curve_ptr(), v.rank(), degree, std::move(w));
}

LocallyAbelianBundle tensor(const LocallyAbelianBundle& a, const LocallyAbelianBundle& b) {
    check_same_curve(a, b);
    i64 degree = a.degree() * b.rank() + b.degree() * a.rank();
    std::vector<std::vector<Rat>> w;
    w.reserve(a.curve().size());
    for (std::size_t i = 0; i < a.curve().size(); ++i) {
        std::vector<Rat> row;
        row.reserve(static_cast<std::size_t>(a.rank()) * b.rank());
        for (const auto& x : a.weights_at(i))
            for (const auto& y : b.weights_at(i)) {
                Rat s = x + y;
                degree += s.floor();
                row.push_back(s.frac());
            }
        w.push_back(std::move(row));
    }
    return LocallyAbelianBundle(a.curve_ptr(), a.rank() * b.rank(), degree, std::move(w));
}

LocallyAbelianBundle sym_pow(const LocallyAbelianBundle& v, int k) {
    require(k >= 0, "InvalidArgument", "symmetric power wants k >= 0");
    const int r = v.rank();
    const i64 rank_out = binomial(r + k - 1, k);
    i64 degree = binomial(r + k - 1, k - 1) * v.degree();
    std::vector<std::vector<Rat>> w;
    w.reserve(v.curve().size());
    for (std::size_t i = 0; i < v.curve().size(); ++i) {
        const auto& wi = v.weights_at(i);
        std::vector<Rat> row;
        row.reserve(rank_out);
        for_each_multiset(r, k, [&](const std::vector<int>& idx) {
            Rat s(0);
            for (int j : idx) s += wi[j];
            degree += s.floor();
            row.push_back(s.frac());
        });
        w.push_back(std::move(row));
    }
    LocallyAbelianBundle out(v.curve_ptr(), static_cast<int>(rank_out), degree, std::move(w));
    // The defining identity par_deg(Sym^k V) = C(r+k-1,k) (k/r) par_deg(V)
    // is equivalent to the floor bookkeeping above; keep both honest.
    require(out.par_deg() == Rat(rank_out) * Rat(k, r) * v.par_deg(), "Internal",
            "symmetric-power degree bookkeeping disagrees with the scaling identity");
    return out;
}

LocallyAbelianBundle det(const LocallyAbelianBundle& v) {
    i64 degree = v.degree();
    std::vector<std::vector<Rat>> w;
    w.reserve(v.curve().size());
    for (std::size_t i = 0; i < v.curve().size(); ++i) {
        Rat s(0);
        for (const auto& x : v.weights_at(i)) s += x;
        degree += s.floor();
        w.push_back({s.frac()});
    }
    return LocallyAbelianBundle(v.curve_ptr(), 1, degree, std::move(w));
}

LocallyAbelianBundle hom(const LocallyAbelianBundle& a, const LocallyAbelianBundle& b) {
    check_same_curve(a, b);
    return tensor(b, dual(a));
}

LocallyAbelianBundle twist(const LocallyAbelianBundle& v, i64 m) {
    std::vector<std::vector<Rat>> w;
    w.reserve(v.curve().size());
    for (std::size_t i = 0; i < v.curve().size(); ++i) w.push_back(v.weights_at(i));
    return LocallyAbelianBundle(v.curve_ptr(), v.rank(),
                                v.degree() + m * static_cast<i64>(v.curve().size()) * v.rank(),
                                std::move(w));
}

LocallyAbelianBundle line_power(const LocallyAbelianBundle& line, i64 m) {
    require(line.rank() == 1, "InvalidArgument", "line_power wants a line bundle");
    LocallyAbelianBundle base = m >= 0 ? line : dual(line);
    i64 e = m >= 0 ? m : -m;
    LocallyAbelianBundle acc = trivial_line(line.curve_ptr());
    for (i64 i = 0; i < e; ++i) acc = tensor(acc, base);
    return acc;
}

std::vector<FlagRow> flag_table(const LocallyAbelianBundle& v, const std::string& label) {
    std::size_t i = v.curve().index_of(label);
    std::vector<FlagRow> rows;
    for (const auto& x : v.weights_at(i)) {
        if (!rows.empty() && rows.back().weight == x)
            ++rows.back().multiplicity;
        else
            rows.push_back({x, 1});
    }
    return rows;
}

i64 euler_characteristic(const LocallyAbelianBundle& v) {
    return v.degree() + static_cast<i64>(v.rank()) * (1 - v.curve().genus);
}

i64 h0_line_genus0(const MarkedCurve& curve, i64 d) {
    require(curve.genus == 0, "GenusNotZero",
            "exact section counts are only available at genus 0");
    return d >= 0 ? d + 1 : 0;
}

ConnectionReport connection_exists(const LocallyAbelianBundle& v,
                                   const std::vector<LocallyAbelianBundle>& declared_summands) {
    ConnectionReport rep;
    rep.total_par_deg = v.par_deg();
    if (!declared_summands.empty()) {
        i64 rank_sum = 0;
        i64 degree_sum = 0;
        for (const auto& s : declared_summands) {
            require(s.curve() == v.curve(), "CurveMismatch",
                    "summand lives on a different curve");
            rank_sum += s.rank();
            degree_sum += s.degree();
        }
        require(rank_sum == v.rank() && degree_sum == v.degree(), "SummandInconsistent",
                "declared summands do not add up to the bundle's rank and degree");
        for (std::size_t i = 0; i < v.curve().size(); ++i) {
            std::vector<Rat> merged;
            for (const auto& s : declared_summands)
                for (const auto& x : s.weights_at(i)) merged.push_back(x);
            sort_descending(merged);
            require(merged == v.weights_at(i), "SummandInconsistent",
                    "declared summand weights do not merge to the bundle's weights at '" +
                        v.curve().points[i].label + "'");
        }
        for (const auto& s : declared_summands) rep.summand_par_degs.push_back(s.par_deg());
    }
    rep.exists = rep.total_par_deg.is_zero();
    for (const auto& pd : rep.summand_par_degs)
        if (!pd.is_zero()) rep.exists = false;
    rep.detail = rep.exists ? "every declared summand has parabolic degree zero"
                            : "a summand (or the bundle itself) has nonzero parabolic degree";
    return rep;
}

} // namespace parop
