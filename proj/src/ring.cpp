#include "fusalg/ring.hpp"

#include <algorithm>
#include <unordered_set>

namespace fusalg {

namespace {

std::vector<std::uint16_t> flatten(int order, const std::vector<std::vector<int>>& table,
                                   const char* what) {
    if (int(table.size()) != order) throw input_error(std::string(what) + ": expected " + std::to_string(order) + " rows");
    std::vector<std::uint16_t> flat(std::size_t(order) * order);
    for (int i = 0; i < order; ++i) {
        if (int(table[i].size()) != order)
            throw input_error(std::string(what) + ": row " + std::to_string(i) + " has wrong length");
        for (int j = 0; j < order; ++j) {
            int v = table[i][j];
            if (v < 0 || v >= order)
                throw input_error(std::string(what) + "[" + std::to_string(i) + "][" + std::to_string(j) + "] = " + std::to_string(v) + " is not an element index");
            flat[std::size_t(i) * order + j] = std::uint16_t(v);
        }
    }
    return flat;
}

void check_order(long order, const char* what) {
    if (order < 2) throw input_error(std::string(what) + ": ring order must be at least 2 (one != zero)");
    if (order > kMaxRingOrder)
        throw budget_error(std::string(what) + ": order " + std::to_string(order) + " exceeds the constructible cap " + std::to_string(kMaxRingOrder));
}

} // namespace

FiniteRing::FiniteRing(int order, std::vector<std::uint16_t> add, std::vector<std::uint16_t> mul,
                       int one, std::string label, std::vector<std::string> element_names)
    : order_(order), one_(one), add_(std::move(add)), mul_(std::move(mul)), label_(std::move(label)) {
    check_order(order, "FiniteRing");
    if (add_.size() != std::size_t(order) * order || mul_.size() != std::size_t(order) * order)
        throw input_error("FiniteRing: table size mismatch");
    if (one < 0 || one >= order) throw input_error("FiniteRing: identity index out of range");
    for (std::size_t i = 0; i < add_.size(); ++i)
        if (add_[i] >= order || mul_[i] >= order)
            throw input_error("FiniteRing: table entry is not an element index");
    neg_.assign(order, -1);
    for (int a = 0; a < order; ++a)
        for (int b = 0; b < order; ++b)
            if (this->add(a, b) == 0) neg_[a] = b;
    for (int a = 0; a < order; ++a)
        if (neg_[a] < 0) throw input_error("FiniteRing: element " + std::to_string(a) + " has no additive inverse");
    if (element_names.empty()) {
        names_.reserve(order);
        for (int a = 0; a < order; ++a) names_.push_back(std::to_string(a));
    } else {
        if (int(element_names.size()) != order) throw input_error("FiniteRing: element name count mismatch");
        names_ = std::move(element_names);
        structured_names_ = true;
    }
}

// ---------------------------------------------------------------------------
// Axiom verification
// ---------------------------------------------------------------------------

AxiomReport verify_ring_axioms(int order, const std::vector<std::uint16_t>& add,
                               const std::vector<std::uint16_t>& mul, int one) {
    AxiomReport report;
    auto fail = [&](std::string axiom, int a, int b = -1, int c = -1) {
        report.ok = false;
        report.failures.push_back({std::move(axiom), {a, b, c}});
    };
    if (order < 2) {
        fail("one_neq_zero", -1);
        return report;
    }
    auto at = [&](const std::vector<std::uint16_t>& t, int a, int b) { return int(t[std::size_t(a) * order + b]); };

    bool closed = add.size() == std::size_t(order) * order && mul.size() == std::size_t(order) * order;
    for (std::size_t i = 0; closed && i < add.size(); ++i)
        if (add[i] >= order || mul[i] >= order) closed = false;
    if (!closed) {
        fail("table_shape", -1);
        return report;
    }

    for (int a = 0; a < order; ++a)
        if (at(add, a, 0) != a || at(add, 0, a) != a) {
            fail("add_identity", a);
            break;
        }
    for (int a = 0; a < order; ++a) {
        bool inv = false;
        for (int b = 0; b < order; ++b)
            if (at(add, a, b) == 0) inv = true;
        if (!inv) {
            fail("add_inverse", a);
            break;
        }
    }
    [&] {
        for (int a = 0; a < order; ++a)
            for (int b = 0; b < order; ++b)
                if (at(add, a, b) != at(add, b, a)) return fail("add_commutativity", a, b);
    }();
    [&] {
        for (int a = 0; a < order; ++a)
            for (int b = 0; b < order; ++b)
                for (int c = 0; c < order; ++c)
                    if (at(add, at(add, a, b), c) != at(add, a, at(add, b, c)))
                        return fail("add_associativity", a, b, c);
    }();
    [&] {
        for (int a = 0; a < order; ++a)
            for (int b = 0; b < order; ++b)
                for (int c = 0; c < order; ++c)
                    if (at(mul, at(mul, a, b), c) != at(mul, a, at(mul, b, c)))
                        return fail("mul_associativity", a, b, c);
    }();
    [&] {
        for (int a = 0; a < order; ++a)
            for (int b = 0; b < order; ++b)
                for (int c = 0; c < order; ++c)
                    if (at(mul, a, at(add, b, c)) != at(add, at(mul, a, b), at(mul, a, c)))
                        return fail("left_distributivity", a, b, c);
    }();
    [&] {
        for (int a = 0; a < order; ++a)
            for (int b = 0; b < order; ++b)
                for (int c = 0; c < order; ++c)
                    if (at(mul, at(add, a, b), c) != at(add, at(mul, a, c), at(mul, b, c)))
                        return fail("right_distributivity", a, b, c);
    }();
    for (int a = 0; a < order; ++a)
        if (at(mul, one, a) != a || at(mul, a, one) != a) {
            fail("one_identity", a);
            break;
        }
    if (one == 0) fail("one_neq_zero", one);
    return report;
}

AxiomReport verify_ring_axioms(const FiniteRing& ring) {
    return verify_ring_axioms(ring.order(), ring.add_table(), ring.mul_table(), ring.one());
}

std::string render_axiom_failures(const AxiomReport& report) {
    std::string msg;
    for (const auto& f : report.failures) {
        if (!msg.empty()) msg += "; ";
        msg += f.axiom + " fails at (";
        bool first = true;
        for (int w : f.witness) {
            if (w < 0) continue;
            if (!first) msg += ",";
            msg += std::to_string(w);
            first = false;
        }
        msg += ")";
    }
    return msg;
}

// ---------------------------------------------------------------------------
// Constructors
// ---------------------------------------------------------------------------

RingPtr build_cyclic_ring(int n) {
    if (n < 2) throw input_error("build_cyclic_ring: order must be >= 2, got " + std::to_string(n));
    check_order(n, "build_cyclic_ring");
    std::vector<std::uint16_t> add(std::size_t(n) * n), mul(std::size_t(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            add[std::size_t(a) * n + b] = std::uint16_t((a + b) % n);
            mul[std::size_t(a) * n + b] = std::uint16_t((a * b) % n);
        }
    return std::make_shared<FiniteRing>(n, std::move(add), std::move(mul), 1, "Z" + std::to_string(n));
}

RingPtr build_product_ring(const RingPtr& r1, const RingPtr& r2) {
    const int n1 = r1->order(), n2 = r2->order();
    const long n = long(n1) * n2;
    check_order(n, "build_product_ring");
    std::vector<std::uint16_t> add(std::size_t(n) * n), mul(std::size_t(n) * n);
    std::vector<std::string> names(n);
    for (int a1 = 0; a1 < n1; ++a1)
        for (int a2 = 0; a2 < n2; ++a2) {
            int a = a1 * n2 + a2;
            names[a] = "(" + r1->element_name(a1) + "," + r2->element_name(a2) + ")";
            for (int b1 = 0; b1 < n1; ++b1)
                for (int b2 = 0; b2 < n2; ++b2) {
                    int b = b1 * n2 + b2;
                    add[std::size_t(a) * n + b] = std::uint16_t(r1->add(a1, b1) * n2 + r2->add(a2, b2));
                    mul[std::size_t(a) * n + b] = std::uint16_t(r1->mul(a1, b1) * n2 + r2->mul(a2, b2));
                }
        }
    int one = r1->one() * n2 + r2->one();
    return std::make_shared<FiniteRing>(int(n), std::move(add), std::move(mul), one,
                                        r1->label() + "x" + r2->label(), std::move(names));
}

namespace {

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

} // namespace

RingPtr build_pattern_matrix_ring(int p, int k, const std::vector<std::vector<int>>& pattern) {
    if (!is_prime(p)) throw input_error("build_pattern_matrix_ring: p = " + std::to_string(p) + " is not prime");
    if (k < 1 || int(pattern.size()) != k)
        throw input_error("build_pattern_matrix_ring: pattern must be k x k");
    std::vector<std::vector<bool>> allowed(k, std::vector<bool>(k, false));
    for (int i = 0; i < k; ++i) {
        if (int(pattern[i].size()) != k) throw input_error("build_pattern_matrix_ring: pattern must be k x k");
        for (int j = 0; j < k; ++j) allowed[i][j] = pattern[i][j] != 0;
    }
    for (int i = 0; i < k; ++i)
        if (!allowed[i][i])
            throw input_error("build_pattern_matrix_ring: pattern must contain the diagonal (missing (" +
                              std::to_string(i) + "," + std::to_string(i) + ") so there is no identity)");
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            for (int l = 0; l < k; ++l)
                if (allowed[i][j] && allowed[j][l] && !allowed[i][l])
                    throw input_error("build_pattern_matrix_ring: pattern is not multiplicatively closed at (" +
                                      std::to_string(i) + "," + std::to_string(j) + ")*(" + std::to_string(j) + "," +
                                      std::to_string(l) + ")");

    // Allowed cells in row-major order; cell t is the base-p digit of weight p^t.
    std::vector<std::pair<int, int>> cells;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (allowed[i][j]) cells.push_back({i, j});
    long order = 1;
    for (std::size_t t = 0; t < cells.size(); ++t) {
        order *= p;
        if (order > kMaxRingOrder)
            throw budget_error("build_pattern_matrix_ring: order p^" + std::to_string(cells.size()) +
                               " exceeds the constructible cap " + std::to_string(kMaxRingOrder));
    }

    auto decode = [&](int idx) {
        std::vector<std::vector<int>> m(k, std::vector<int>(k, 0));
        for (const auto& [i, j] : cells) {
            m[i][j] = idx % p;
            idx /= p;
        }
        return m;
    };
    auto encode = [&](const std::vector<std::vector<int>>& m) {
        int idx = 0;
        for (std::size_t t = cells.size(); t-- > 0;) idx = idx * p + m[cells[t].first][cells[t].second];
        return idx;
    };

    const int n = int(order);
    std::vector<std::uint16_t> add(std::size_t(n) * n), mul(std::size_t(n) * n);
    std::vector<std::string> names(n);
    std::vector<std::vector<std::vector<int>>> mats(n);
    for (int a = 0; a < n; ++a) {
        mats[a] = decode(a);
        std::string s = "[";
        for (int i = 0; i < k; ++i) {
            s += i ? ";" : "";
            for (int j = 0; j < k; ++j) s += (j ? "," : "") + std::to_string(mats[a][i][j]);
        }
        names[a] = s + "]";
    }
    std::vector<std::vector<int>> sum(k, std::vector<int>(k)), prod(k, std::vector<int>(k));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) {
                    sum[i][j] = (mats[a][i][j] + mats[b][i][j]) % p;
                    int acc = 0;
                    for (int l = 0; l < k; ++l) acc += mats[a][i][l] * mats[b][l][j];
                    prod[i][j] = acc % p;
                }
            add[std::size_t(a) * n + b] = std::uint16_t(encode(sum));
            mul[std::size_t(a) * n + b] = std::uint16_t(encode(prod));
        }
    std::vector<std::vector<int>> id(k, std::vector<int>(k, 0));
    for (int i = 0; i < k; ++i) id[i][i] = 1;
    std::string patbits;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) patbits += allowed[i][j] ? '1' : '0';
    std::string label = "pmat(Z" + std::to_string(p) + "," + std::to_string(k) + "," + patbits + ")";
    return std::make_shared<FiniteRing>(n, std::move(add), std::move(mul), encode(id), std::move(label),
                                        std::move(names));
}

QuotientRing build_quotient_ring(const RingPtr& ring, const SubsetMask& ideal) {
    const FiniteRing& R = *ring;
    if (ideal.carrier_size() != R.order()) throw input_error("build_quotient_ring: ideal carrier mismatch");
    if (!is_two_sided_ideal(R, ideal)) throw input_error("build_quotient_ring: the given set is not a two-sided ideal");
    const int n = R.order();
    // Coset representative: least element index in a + I.
    std::vector<int> rep(n, -1);
    for (int a = 0; a < n; ++a) {
        int least = a;
        for (int i = ideal.first(); i >= 0; i = ideal.next(i)) least = std::min(least, R.add(a, i));
        rep[a] = least;
    }
    std::vector<int> reps;
    std::vector<int> index_of(n, -1);
    for (int a = 0; a < n; ++a)
        if (rep[a] == a) {
            index_of[a] = int(reps.size());
            reps.push_back(a);
        }
    const int q = int(reps.size());
    if (q < 2) throw input_error("build_quotient_ring: quotient would be the zero ring (ideal is the whole ring)");
    std::vector<std::uint16_t> add(std::size_t(q) * q), mul(std::size_t(q) * q);
    std::vector<std::string> names(q);
    for (int i = 0; i < q; ++i) {
        names[i] = R.element_name(reps[i]) + "+I";
        for (int j = 0; j < q; ++j) {
            add[std::size_t(i) * q + j] = std::uint16_t(index_of[rep[R.add(reps[i], reps[j])]]);
            mul[std::size_t(i) * q + j] = std::uint16_t(index_of[rep[R.mul(reps[i], reps[j])]]);
        }
    }
    QuotientRing out;
    out.ring = std::make_shared<FiniteRing>(q, std::move(add), std::move(mul), index_of[rep[R.one()]],
                                            R.label() + "/" + ideal.to_string(), std::move(names));
    out.projection.resize(n);
    for (int a = 0; a < n; ++a) out.projection[a] = index_of[rep[a]];
    return out;
}

RingPtr build_table_ring(int order, const std::vector<std::vector<int>>& add,
                         const std::vector<std::vector<int>>& mul, int one, std::string label) {
    check_order(order, "build_table_ring");
    auto fadd = flatten(order, add, "add");
    auto fmul = flatten(order, mul, "mul");
    if (one < 0 || one >= order) throw input_error("build_table_ring: identity index out of range");
    auto report = verify_ring_axioms(order, fadd, fmul, one);
    if (!report.ok) throw input_error("build_table_ring: " + render_axiom_failures(report));
    return std::make_shared<FiniteRing>(order, std::move(fadd), std::move(fmul), one, std::move(label));
}

// ---------------------------------------------------------------------------
// Roles and predicates
// ---------------------------------------------------------------------------

ElementRoles element_roles(const FiniteRing& ring) {
    const int n = ring.order();
    ElementRoles roles{SubsetMask(n), SubsetMask(n), SubsetMask(n), SubsetMask(n), SubsetMask(n)};
    for (int a = 0; a < n; ++a) {
        bool lzd = a == 0, rzd = a == 0, unit = false, central = true;
        for (int b = 0; b < n; ++b) {
            if (b != 0 && ring.mul(a, b) == 0) lzd = true;
            if (b != 0 && ring.mul(b, a) == 0) rzd = true;
            if (ring.mul(a, b) == ring.one() && ring.mul(b, a) == ring.one()) unit = true;
            if (ring.mul(a, b) != ring.mul(b, a)) central = false;
        }
        if (lzd) roles.left_zero_divisors.set(a);
        if (rzd) roles.right_zero_divisors.set(a);
        if (unit) roles.units.set(a);
        if (central) roles.center.set(a);
    }
    roles.regular = (roles.left_zero_divisors | roles.right_zero_divisors).complement();
    return roles;
}

namespace {

/// Every nonzero a = z + r with z in zd and r outside zd.
bool is_fusible_against(const FiniteRing& ring, const SubsetMask& zd) {
    for (int a = 1; a < ring.order(); ++a) {
        bool found = false;
        for (int z = zd.first(); z >= 0 && !found; z = zd.next(z))
            if (!zd.test(ring.sub(a, z))) found = true;
        if (!found) return false;
    }
    return true;
}

} // namespace

bool is_commutative(const FiniteRing& ring) {
    for (int a = 0; a < ring.order(); ++a)
        for (int b = a + 1; b < ring.order(); ++b)
            if (ring.mul(a, b) != ring.mul(b, a)) return false;
    return true;
}

RingPredicates ring_predicates(const FiniteRing& ring) {
    const int n = ring.order();
    auto roles = element_roles(ring);
    RingPredicates p;

    p.commutative = is_commutative(ring);

    p.right_duo = true;
    for (int a = 0; a < n && p.right_duo; ++a) {
        SubsetMask aR(n);
        for (int s = 0; s < n; ++s) aR.set(ring.mul(a, s));
        for (int r = 0; r < n; ++r)
            if (!aR.test(ring.mul(r, a))) {
                p.right_duo = false;
                break;
            }
    }

    p.domain = roles.left_zero_divisors == SubsetMask::single(n, 0);
    p.division = roles.units.count() == n - 1;
    p.field = p.division && p.commutative;

    p.reduced_ring = true;
    for (int a = 1; a < n; ++a)
        if (ring.mul(a, a) == 0) {
            p.reduced_ring = false;
            break;
        }

    // Local: the non-units form an additive subgroup closed under outer
    // multiplication (the unique maximal right ideal).
    SubsetMask nonunits = roles.units.complement();
    p.local = true;
    for (int a = nonunits.first(); a >= 0 && p.local; a = nonunits.next(a)) {
        for (int b = nonunits.first(); b >= 0; b = nonunits.next(b))
            if (!nonunits.test(ring.add(a, b))) {
                p.local = false;
                break;
            }
        for (int r = 0; r < n && p.local; ++r)
            if (!nonunits.test(ring.mul(a, r)) || !nonunits.test(ring.mul(r, a))) p.local = false;
    }

    p.left_fusible = is_fusible_against(ring, roles.left_zero_divisors);
    p.fusible = p.left_fusible && is_fusible_against(ring, roles.right_zero_divisors);

    // Regular left fusible: some regular s makes s*a left fusible.
    p.regular_left_fusible = true;
    const auto& lzd = roles.left_zero_divisors;
    for (int a = 1; a < n && p.regular_left_fusible; ++a) {
        bool found = false;
        for (int s = roles.regular.first(); s >= 0 && !found; s = roles.regular.next(s)) {
            int sa = ring.mul(s, a);
            for (int z = lzd.first(); z >= 0 && !found; z = lzd.next(z))
                if (!lzd.test(ring.sub(sa, z))) found = true;
        }
        p.regular_left_fusible = found;
    }
    return p;
}

// ---------------------------------------------------------------------------
// Ideals
// ---------------------------------------------------------------------------

namespace {

SubsetMask ideal_closure(const FiniteRing& ring, std::span<const int> generators, bool left_mult,
                         const SubsetMask* seed) {
    const int n = ring.order();
    SubsetMask mask(n);
    std::vector<int> members;
    auto push = [&](int x) {
        if (!mask.test(x)) {
            mask.set(x);
            members.push_back(x);
        }
    };
    push(0);
    if (seed)
        for (int x = seed->first(); x >= 0; x = seed->next(x)) push(x);
    for (int g : generators) {
        if (g < 0 || g >= n) throw input_error("ideal closure: generator index out of range");
        push(g);
    }
    for (std::size_t i = 0; i < members.size(); ++i) {
        int x = members[i];
        for (std::size_t j = 0; j <= i; ++j) push(ring.add(x, members[j]));
        for (int r = 0; r < n; ++r) {
            push(ring.mul(x, r));
            if (left_mult) push(ring.mul(r, x));
        }
    }
    return mask;
}

} // namespace

SubsetMask right_ideal_closure(const FiniteRing& ring, std::span<const int> generators) {
    return ideal_closure(ring, generators, false, nullptr);
}

SubsetMask two_sided_ideal_closure(const FiniteRing& ring, std::span<const int> generators) {
    return ideal_closure(ring, generators, true, nullptr);
}

bool is_right_ideal(const FiniteRing& ring, const SubsetMask& set) {
    if (set.carrier_size() != ring.order() || !set.test(0)) return false;
    for (int a = set.first(); a >= 0; a = set.next(a)) {
        for (int b = set.first(); b >= 0; b = set.next(b))
            if (!set.test(ring.add(a, b))) return false;
        for (int r = 0; r < ring.order(); ++r)
            if (!set.test(ring.mul(a, r))) return false;
    }
    return true;
}

bool is_two_sided_ideal(const FiniteRing& ring, const SubsetMask& set) {
    if (!is_right_ideal(ring, set)) return false;
    for (int a = set.first(); a >= 0; a = set.next(a))
        for (int r = 0; r < ring.order(); ++r)
            if (!set.test(ring.mul(r, a))) return false;
    return true;
}

IdealBudget& global_ideal_budget() {
    static IdealBudget budget;
    return budget;
}

std::vector<SubsetMask> enumerate_right_ideals(const FiniteRing& ring, bool two_sided,
                                               const IdealBudget& budget) {
    const int n = ring.order();
    if (n > budget.max_ring_order)
        throw budget_error("enumerate_right_ideals: ring order " + std::to_string(n) +
                           " exceeds the enumeration cap " + std::to_string(budget.max_ring_order));
    std::unordered_set<SubsetMask, SubsetMaskHash> seen;
    std::vector<SubsetMask> out;
    SubsetMask zero(n);
    zero.set(0);
    seen.insert(zero);
    out.push_back(zero);
    for (std::size_t i = 0; i < out.size(); ++i) {
        SubsetMask current = out[i]; // out may reallocate below
        for (int a = 0; a < n; ++a) {
            if (current.test(a)) continue;
            int gens[1] = {a};
            SubsetMask grown = ideal_closure(ring, gens, two_sided, &current);
            if (seen.insert(grown).second) {
                out.push_back(std::move(grown));
                if (long(out.size()) > budget.max_ideals)
                    throw budget_error("enumerate_right_ideals: more than " + std::to_string(budget.max_ideals) +
                                       " ideals (cap exceeded)");
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const SubsetMask& a, const SubsetMask& b) {
        if (a.count() != b.count()) return a.count() < b.count();
        return a < b;
    });
    return out;
}

std::vector<SubsetMask> cyclic_ideals(const FiniteRing& ring, Sidedness side) {
    std::vector<SubsetMask> out;
    out.reserve(ring.order());
    for (int a = 0; a < ring.order(); ++a) {
        int gens[1] = {a};
        out.push_back(ideal_closure(ring, gens, side == Sidedness::two_sided, nullptr));
    }
    return out;
}

bool is_essential_ideal(const FiniteRing& ring, const SubsetMask& ideal, Sidedness side,
                        const std::vector<SubsetMask>& cyclic) {
    // The tested set must be (at least) a right ideal; `side` selects the
    // family of ideals quantified over. Annihilators are right ideals even
    // when the two-sided quantification is wanted.
    if (!is_right_ideal(ring, ideal)) throw input_error("is_essential_ideal: not a right ideal");
    // Every nonzero ideal contains a nonzero cyclic one, so quantifying over
    // the cyclic ideals aR (or RaR) is equivalent to the definition.
    for (int a = 1; a < ring.order(); ++a)
        if (!(ideal & cyclic[a]).any_beyond_zero()) return false;
    return true;
}

bool is_essential_ideal(const FiniteRing& ring, const SubsetMask& ideal, Sidedness side) {
    return is_essential_ideal(ring, ideal, side, cyclic_ideals(ring, side));
}

bool is_essential_right_ideal(const FiniteRing& ring, const SubsetMask& ideal) {
    return is_essential_ideal(ring, ideal, Sidedness::right);
}

} // namespace fusalg
