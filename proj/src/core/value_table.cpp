#include "core/value_table.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

#include "core/combinatorics.hpp"
#include "core/error.hpp"
#include "core/ratio.hpp"

namespace kdm {

namespace {
const Rational kOne(1);
}

ValueTable ValueTable::make_shell(const Params& p) {
    p.validate();
    ValueTable t;
    t.p_ = p;
    t.c_star_ = competitive_ratio(p);
    if (t.c_star_.sign() <= 0)
        fail(ErrorCode::check_failed,
             "cannot build value table: c* = " + t.c_star_.str() + " is not positive (k=" +
                 std::to_string(p.k) + ", d=" + std::to_string(p.d) + ", b=" + std::to_string(p.b) +
                 " lies outside the k >= d regime)");
    t.dual_step_ = (t.c_star_ * Rational(p.b)).inverse();
    const int kb = p.k * p.b;
    t.rows_.resize(p.b + 1);
    for (int l = 0; l <= p.b; ++l) t.rows_[l].resize(kb - l + 1);
    t.potentials_.resize(p.b);
    return t;
}

ValueTable ValueTable::build(const Params& p) {
    ValueTable t = make_shell(p);
    const int b = p.b;
    const int d = p.d;
    const int kb = p.k * b;
    const Rational& inv_bc = t.dual_step_;

    // P_l = ((d-1)/d)^{kb-l} * (1/(bc)) * sum_{i=1}^{b-l} i C(kb-l, b-l-i)/(d-1)^{b-l-i}
    //       + 1 - (b-l)/(bc)
    for (int l = 0; l < b; ++l) {
        Rational sum(0);
        for (int i = 1; i <= b - l; ++i) {
            sum += Rational(BigInt(i) * binomial(kb - l, b - l - i),
                            BigInt::pow(BigInt(d - 1), b - l - i));
        }
        Rational pl = Rational::pow(Rational(d - 1, d), kb - l) * inv_bc * sum;
        pl += Rational(1) - Rational(b - l) * inv_bc;
        t.potentials_[l] = std::move(pl);
    }

    // V(l,delta) = sum_{i=l}^{b-1} (-1)^{i-l} (d-1)^{-(i-l)} C(delta-l, i-l)
    //                (d/(d-1))^{delta-i} (P_i + (b-i)/(bc) - 1)
    //              + 1 - (b-l)/(bc)
    const Rational growth(d, d - 1);
    for (int l = 0; l <= b; ++l) {
        for (int delta = l; delta <= kb; ++delta) {
            if (l == b) {
                t.rows_[l][delta - l] = kOne;
                continue;
            }
            Rational v = Rational(1) - Rational(b - l) * inv_bc;
            for (int i = l; i < b && i - l <= delta - l; ++i) {
                BigInt choose = binomial(delta - l, i - l);
                if (choose.is_zero()) continue;
                Rational term(choose, BigInt::pow(BigInt(d - 1), i - l));
                if ((i - l) & 1) term = -term;
                term *= Rational::pow(growth, delta - i);
                term *= t.potentials_[i] + Rational(b - i) * inv_bc - Rational(1);
                v += term;
            }
            t.rows_[l][delta - l] = std::move(v);
        }
    }
    return t;
}

ValueTable ValueTable::build_recursive(const Params& p) {
    ValueTable t = make_shell(p);
    const int b = p.b;
    const int d = p.d;
    const int kb = p.k * b;
    const Rational& inv_bc = t.dual_step_;
    const Rational growth(d, d - 1);
    const Rational spread(1, d - 1);

    for (int delta = b; delta <= kb; ++delta) t.rows_[b][delta - b] = kOne;

    // Row l depends on row l+1 via
    //   V(l, delta+1) = d/(d-1) V(l, delta) + 1/(d-1) (1/(bc) - V(l+1, delta+1)),
    // with V(l, l) = P_l unknown. Each V(l, delta) is affine in P_l; the
    // boundary demand V(l, kb) = 1 then pins P_l.
    for (int l = b - 1; l >= 0; --l) {
        const int width = kb - l + 1;
        std::vector<Rational> coef(width), off(width);
        coef[0] = Rational(1);
        off[0] = Rational(0);
        for (int delta = l; delta < kb; ++delta) {
            int i = delta - l;
            coef[i + 1] = growth * coef[i];
            off[i + 1] = growth * off[i] + spread * (inv_bc - t.value(l + 1, delta + 1));
        }
        Rational pl = (Rational(1) - off[width - 1]) / coef[width - 1];
        for (int i = 0; i < width; ++i) t.rows_[l][i] = coef[i] * pl + off[i];
        t.potentials_[l] = std::move(pl);
    }
    return t;
}

const Rational& ValueTable::value(int l, int delta) const {
    if (l < 0 || l > p_.b || delta < l)
        fail(ErrorCode::invalid_argument, "table lookup out of range: l=" + std::to_string(l) +
                                              " delta=" + std::to_string(delta));
    if (l == p_.b || delta >= p_.k * p_.b) return kOne;
    return rows_[l][delta - l];
}

Rational ValueTable::p_gain(int l, int delta) const {
    if (l == p_.b || delta >= p_.k * p_.b) return Rational(0);
    return value(l + 1, delta + 1) - value(l, delta);
}

Rational ValueTable::q_gain(int l, int delta) const {
    if (l == p_.b || delta >= p_.k * p_.b) return Rational(0);
    return value(l, delta + 1) - value(l, delta);
}

const Rational& ValueTable::potential(int l) const {
    if (l < 0 || l >= p_.b)
        fail(ErrorCode::invalid_argument, "P_l defined for 0 <= l < b, got " + std::to_string(l));
    return potentials_[l];
}

bool ValueTable::equal_grid(const ValueTable& other) const {
    for (int l = 0; l <= p_.b; ++l)
        if (rows_[l] != other.rows_[l]) return false;
    return true;
}

TableValidationReport ValueTable::validate() const {
    TableValidationReport report;
    const int b = p_.b;
    const int kb = p_.k * b;
    auto flag = [&](const std::string& kind, int l, int delta, const std::string& detail) {
        report.violations.push_back({kind, l, delta, detail});
    };

    for (int l = 0; l <= b; ++l) {
        for (int delta = l; delta <= kb; ++delta) {
            const Rational& v = rows_[l][delta - l];
            if (v.sign() < 0 || v > kOne)
                flag("range", l, delta, "V outside [0, 1]: " + v.str());
        }
    }
    for (int delta = b; delta <= kb; ++delta)
        if (rows_[b][delta - b] != kOne) flag("boundary", b, delta, "V(b, delta) != 1");
    for (int l = 0; l <= b; ++l)
        if (rows_[l][kb - l] != kOne) flag("boundary", l, kb, "V(l, kb) != 1");
    if (!rows_[0][0].is_zero()) flag("boundary", 0, 0, "V(0, 0) != 0");
    for (int l = 0; l < b; ++l)
        if (rows_[l][0] != potentials_[l]) flag("anchor", l, l, "V(l, l) != P_l");

    for (int l = 0; l <= b; ++l)
        for (int delta = l; delta < kb; ++delta)
            if (rows_[l][delta + 1 - l] < rows_[l][delta - l])
                flag("monotonicity", l, delta, "V decreases in delta");

    // The construction saturates b(p + (d-1) q) = 1/c* on every interior cell.
    for (int l = 0; l < b; ++l) {
        for (int delta = l; delta < kb; ++delta) {
            Rational lhs = p_gain(l, delta) + Rational(p_.d - 1) * q_gain(l, delta);
            if (lhs != dual_step_)
                flag("saturation", l, delta,
                     "p + (d-1) q = " + lhs.str() + ", expected " + dual_step_.str());
        }
    }

    ValueTable fresh = build(p_);
    if (!equal_grid(fresh)) {
        for (int l = 0; l <= b; ++l)
            for (int delta = l; delta <= kb; ++delta)
                if (rows_[l][delta - l] != fresh.rows_[l][delta - l])
                    report.mismatched_cells.emplace_back(l, delta);
    }
    return report;
}

std::string ValueTable::csv() const {
    std::ostringstream out;
    out << "l,delta,num,den\n";
    for (int l = 0; l <= p_.b; ++l)
        for (int delta = l; delta <= p_.k * p_.b; ++delta) {
            const Rational& v = rows_[l][delta - l];
            out << l << ',' << delta << ',' << v.num().str() << ',' << v.den().str() << '\n';
        }
    return out.str();
}

void ValueTable::perturb(int l, int delta, Rational v) {
    rows_.at(l).at(delta - l) = std::move(v);
}

std::shared_ptr<const ValueTable> table_for(const Params& p) {
    static std::mutex mutex;
    static std::map<std::tuple<int, int, int>, std::shared_ptr<const ValueTable>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto key = std::make_tuple(p.k, p.d, p.b);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto table = std::make_shared<const ValueTable>(ValueTable::build(p));
    cache.emplace(key, table);
    return table;
}

}  // namespace kdm
