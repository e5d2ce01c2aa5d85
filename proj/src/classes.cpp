#include "qp/classes.hpp"

#include <algorithm>
#include <deque>

namespace qp {

Rat mass_formula(const QuaternionOrder& O)
{
    if (!is_squarefree(O.reduced_discriminant))
        throw domain_error("mass_formula: discriminant not square-free");
    Rat m(1, 12);
    for (auto& p : O.algebra.ramified_primes) m *= Rat(p - 1);
    for (auto& p : squarefree_prime_divisors(O.level)) m *= Rat(p + 1);
    return m;
}

Rat ideal_norm(const QuaternionOrder& O, const QuatLattice& L)
{
    // det of the trace pairing scales with Nm^4
    MatQ G(4, 4);
    for (long i = 0; i < 4; ++i)
        for (long j = 0; j < 4; ++j)
            G(i, j) = quat_trace(quat_mul(O.algebra, L.row(i), quat_conj(L.row(j))));
    Rat ratio = det(G) / Rat(O.reduced_discriminant * O.reduced_discriminant);
    // fourth root of a rational known to be one
    Int n4 = ratio.get_num(), d4 = ratio.get_den();
    auto r2n = perfect_sqrt(n4), r2d = perfect_sqrt(d4);
    if (!r2n || !r2d) throw internal_error("ideal norm: determinant ratio not a fourth power");
    auto rn = perfect_sqrt(*r2n), rd = perfect_sqrt(*r2d);
    if (!rn || !rd) throw internal_error("ideal norm: determinant ratio not a fourth power");
    return rat(*rn, *rd);
}

RightIdeal trivial_ideal(const QuaternionOrder& O) { return RightIdeal{O.lattice, Rat(1)}; }

Int unit_weight(const QuaternionAlgebra& A, const QuatLattice& order_lattice)
{
    MatZ G = norm_gram2(A, order_lattice);
    auto r = enumerate_by_norm(G, 1);
    if (r[1] % 2 != 0) throw internal_error("unit count not even");
    return Int(r[1] / 2);
}

std::vector<RightIdeal> p_neighbors(const QuaternionOrder& O, const RightIdeal& I, const Int& q)
{
    if (divides(q, O.reduced_discriminant))
        throw domain_error("p_neighbors: prime divides disc(O)");
    QuaternionOrder OL = make_order(O.algebra, left_multiplier_ring(O.algebra, I.lattice));
    LocalSplitting sp = local_splitting(OL, q, 1);
    std::vector<RightIdeal> out;
    std::vector<std::pair<Int, Int>> lines;
    for (Int t = 0; t < q; ++t) lines.push_back({Int(1), t});
    lines.push_back({Int(0), Int(1)});
    for (auto& [c0, c1] : lines) {
        // right ideal of M_2(F_q) with column space in the line (c0:c1):
        // generated by [c0 0; c1 0] and [0 c0; 0 c1]
        auto g1 = sp.preimage({c0, Int(0), c1, Int(0)});
        auto g2 = sp.preimage({Int(0), c0, Int(0), c1});
        MatQ rows(6, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) rows(i, j) = Rat(q) * OL.basis()(i, j);
        for (int j = 0; j < 4; ++j) {
            Rat a1(0), a2(0);
            for (int r = 0; r < 4; ++r) {
                a1 += Rat(g1[r]) * OL.basis()(r, j);
                a2 += Rat(g2[r]) * OL.basis()(r, j);
            }
            rows(4, j) = a1;
            rows(5, j) = a2;
        }
        QuatLattice Ic(rows);
        QuatLattice J = lattice_mul(O.algebra, Ic, I.lattice);
        out.push_back(RightIdeal{J, ideal_norm(O, J)});
    }
    return out;
}

bool is_equivalent(const QuaternionOrder& O, const RightIdeal& I, const RightIdeal& J)
{
    // alpha*I = J exists iff J * conj(I) represents Nm(I)*Nm(J)
    QuatLattice L = lattice_mul(O.algebra, J.lattice, lattice_conj(I.lattice));
    Rat target = I.norm * J.norm;
    if (target.get_den() != 1) {
        // scale to integral lattices first
        Int d = lcm(I.norm.get_den(), J.norm.get_den());
        RightIdeal I2{lattice_scale(I.lattice, Rat(d)), I.norm * Rat(d * d)};
        return is_equivalent(O, I2, J);
    }
    MatZ G = norm_gram2(O.algebra, L);
    ZLattice red = lll_reduce(ZLattice(to_rational(G) * Rat(1, 2)));
    return has_vector_of_norm(doubled_gram(red.gram), target.get_num());
}

RightIdeal reduce_ideal(const QuaternionOrder& O, const RightIdeal& I)
{
    MatZ G = norm_gram2(O.algebra, I.lattice);
    ZLattice red = lll_reduce(ZLattice(to_rational(G) * Rat(1, 2)));
    std::vector<Int> v;
    Int nrm = shortest_vector(doubled_gram(red.gram), &v);
    // coordinates back to the original basis: v * basis_change * I.basis
    std::vector<Int> w = v * red.basis_change;
    QuatCoords alpha{Rat(0), Rat(0), Rat(0), Rat(0)};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) alpha[c] += Rat(w[r]) * I.lattice.basis(r, c);
    // J = conj(alpha)/Nm(I) * I
    QuatCoords beta = quat_conj(alpha);
    for (auto& x : beta) x /= I.norm;
    MatQ rows(4, 4);
    for (int r = 0; r < 4; ++r) {
        QuatCoords prod = quat_mul(O.algebra, beta, I.lattice.row(r));
        for (int c = 0; c < 4; ++c) rows(r, c) = prod[c];
    }
    QuatLattice L(rows);
    RightIdeal out{L, ideal_norm(O, L)};
    if (out.norm * I.norm != Rat(nrm)) throw internal_error("reduce_ideal: norm bookkeeping");
    return out;
}

MatZ gross_gram2(const QuaternionAlgebra& A, const QuatLattice& order_lattice)
{
    // lattice Z + 2*O
    MatQ rows(5, 4);
    rows(0, 0) = 1;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) rows(1 + i, j) = Rat(2) * order_lattice.basis(i, j);
    QuatLattice M(rows);
    // trace-zero sublattice: kernel of the trace functional
    MatZ tr(4, 1);
    Int den = 1;
    for (int i = 0; i < 4; ++i) den = lcm(den, Rat(quat_trace(M.row(i))).get_den());
    for (int i = 0; i < 4; ++i) {
        Rat t = quat_trace(M.row(i)) * Rat(den);
        tr(i, 0) = t.get_num();
    }
    MatZ K = left_kernel(tr);
    if (K.m != 3) throw internal_error("gross lattice rank != 3");
    // ternary Gram (doubled) from the reduced norm
    MatQ V(3, 4);
    for (int r = 0; r < 3; ++r) {
        std::vector<Rat> y(4);
        for (int j = 0; j < 4; ++j) y[j] = Rat(K(r, j));
        auto coords = y * M.basis;
        for (int j = 0; j < 4; ++j) V(r, j) = coords[j];
    }
    MatZ G(3, 3);
    for (int r = 0; r < 3; ++r)
        for (int s = 0; s < 3; ++s) {
            QuatCoords vr{V(r, 0), V(r, 1), V(r, 2), V(r, 3)};
            QuatCoords vs{V(s, 0), V(s, 1), V(s, 2), V(s, 3)};
            Rat t = quat_trace(quat_mul(A, vr, quat_conj(vs)));
            if (t.get_den() != 1) throw internal_error("gross gram not integral");
            G(r, s) = t.get_num();
        }
    ZLattice red = lll_reduce(ZLattice(to_rational(G) * Rat(1, 2)));
    return doubled_gram(red.gram);
}

namespace {

// cheap class invariant: unit weight plus a prefix of the ternary theta
struct ClassKey {
    Int w;
    std::vector<uint32_t> theta;
    bool operator<(const ClassKey& o) const
    {
        if (w != o.w) return w < o.w;
        return theta < o.theta;
    }
    bool operator==(const ClassKey& o) const { return w == o.w && theta == o.theta; }
};

ClassKey class_key(const QuaternionAlgebra& A, const QuatLattice& left_order)
{
    ClassKey k;
    k.w = unit_weight(A, left_order);
    MatZ G = gross_gram2(A, left_order);
    auto r = enumerate_by_norm(G, 50);
    k.theta.assign(r.begin() + 1, r.end());
    return k;
}

bool basis_less(const MatQ& a, const MatQ& b)
{
    for (long i = 0; i < a.m * a.n; ++i) {
        if (a.a[i] != b.a[i]) return a.a[i] < b.a[i];
    }
    return false;
}

} // namespace

ClassSet enumerate_classes(const QuaternionOrder& O)
{
    if (!is_squarefree(O.reduced_discriminant))
        throw domain_error("enumerate_classes: discriminant not square-free");
    ClassSet cs;
    cs.order = O;
    cs.mass = mass_formula(O);

    struct Entry {
        RightIdeal rep;
        QuaternionOrder left;
        Int w;
        ClassKey key;
    };
    std::vector<Entry> entries;
    auto add_entry = [&](const RightIdeal& I) {
        QuaternionOrder left = make_order(O.algebra, left_multiplier_ring(O.algebra, I.lattice));
        Entry e{I, left, unit_weight(O.algebra, left.lattice), class_key(O.algebra, left.lattice)};
        entries.push_back(std::move(e));
    };
    add_entry(trivial_ideal(O));
    Rat acc = Rat(1) / Rat(entries[0].w);

    std::vector<Int> good_primes;
    for (long q : primes_up_to(1000)) {
        if (!divides(Int(q), O.reduced_discriminant)) good_primes.push_back(Int(q));
        if (good_primes.size() == 2) break;
    }

    auto closure = [&](const Int& q) {
        std::deque<size_t> queue;
        for (size_t i = 0; i < entries.size(); ++i) queue.push_back(i);
        while (!queue.empty() && acc != cs.mass) {
            size_t i = queue.front();
            queue.pop_front();
            for (auto& J0 : p_neighbors(O, entries[i].rep, q)) {
                RightIdeal J = reduce_ideal(O, J0);
                QuaternionOrder left =
                    make_order(O.algebra, left_multiplier_ring(O.algebra, J.lattice));
                ClassKey key = class_key(O.algebra, left.lattice);
                bool known = false;
                for (auto& e : entries) {
                    if (!(e.key == key)) continue;
                    if (is_equivalent(O, e.rep, J)) {
                        known = true;
                        break;
                    }
                }
                if (!known) {
                    entries.push_back(Entry{J, left, key.w, key});
                    acc += Rat(1) / Rat(key.w);
                    queue.push_back(entries.size() - 1);
                    if (acc == cs.mass) return;
                }
            }
        }
    };

    closure(good_primes[0]);
    if (acc != cs.mass) closure(good_primes[1]);
    if (acc != cs.mass)
        throw internal_error("enumerate_classes: mass not reached after two-prime closure");

    // canonical order: trivial ideal first, the rest by (w, theta prefix, basis)
    std::vector<size_t> idx(entries.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin() + 1, idx.end(), [&](size_t x, size_t y) {
        if (!(entries[x].key == entries[y].key)) return entries[x].key < entries[y].key;
        return basis_less(entries[x].rep.lattice.basis, entries[y].rep.lattice.basis);
    });
    for (size_t i : idx) {
        cs.reps.push_back(entries[i].rep);
        cs.left_orders.push_back(entries[i].left);
        cs.weights.push_back(entries[i].w);
    }

    // Atkin-Lehner permutations and the type partition as their orbits
    for (auto& p : squarefree_prime_divisors(O.reduced_discriminant))
        cs.al_perms[p] = atkin_lehner_perm(cs, p);
    long h = cs.h();
    std::vector<int> comp(h, -1);
    int next = 0;
    for (long i = 0; i < h; ++i) {
        if (comp[i] >= 0) continue;
        // orbit of i under the group generated by the involutions
        std::deque<long> dq{i};
        comp[i] = next;
        while (!dq.empty()) {
            long x = dq.front();
            dq.pop_front();
            for (auto& [p, perm] : cs.al_perms) {
                long y = perm[x];
                if (comp[y] < 0) {
                    comp[y] = next;
                    dq.push_back(y);
                }
            }
        }
        ++next;
    }
    cs.type_map = comp;
    return cs;
}

std::vector<int> atkin_lehner_perm(const ClassSet& cs, const Int& p)
{
    if (!divides(p, cs.order.reduced_discriminant))
        throw domain_error("atkin_lehner_perm: prime does not divide disc(O)");
    QuatLattice P = radical_ideal(cs.order, p);
    std::vector<int> perm(cs.h(), -1);
    for (long i = 0; i < cs.h(); ++i) {
        QuatLattice J = lattice_mul(cs.order.algebra, cs.reps[i].lattice, P);
        RightIdeal JI{J, ideal_norm(cs.order, J)};
        RightIdeal Jr = reduce_ideal(cs.order, JI);
        int target = -1;
        for (long j = 0; j < cs.h(); ++j)
            if (is_equivalent(cs.order, cs.reps[j], Jr)) {
                target = (int)j;
                break;
            }
        if (target < 0) throw internal_error("atkin_lehner_perm: image class not found");
        perm[i] = target;
    }
    // involution check
    for (long i = 0; i < cs.h(); ++i)
        if (perm[perm[i]] != i) throw internal_error("atkin_lehner_perm: not an involution");
    return perm;
}

bool orders_isomorphic(const QuaternionAlgebra& A, const QuatLattice& O1, const QuatLattice& O2)
{
    // norm-isometry with 1 -> 1; bases are rebuilt so the first vector is 1
    // (1 is primitive in an order, so the coordinate vector extends to a
    // unimodular change of basis)
    auto with_one = [&](const QuatLattice& L) {
        auto y = solve_left(L.basis, {Rat(1), Rat(0), Rat(0), Rat(0)});
        if (!y) throw internal_error("order without 1");
        MatZ col(4, 1);
        for (int i = 0; i < 4; ++i) {
            if ((*y)[i].get_den() != 1) throw internal_error("order without integral 1");
            col(i, 0) = (*y)[i].get_num();
        }
        MatZ H, U;
        hermite_normal_form(col, H, U);
        if (H(0, 0) != 1) throw internal_error("1 not primitive in order lattice");
        MatQ W = inverse(to_rational(U.transpose()));
        return W * L.basis;
    };
    MatQ B1 = with_one(O1), B2 = with_one(O2);
    auto pairing = [&](const QuatCoords& x, const QuatCoords& y) {
        return quat_trace(quat_mul(A, x, quat_conj(y)));
    };
    auto rowv = [](const MatQ& B, int i) { return QuatCoords{B(i, 0), B(i, 1), B(i, 2), B(i, 3)}; };
    // Gram targets from O1
    Rat G1[4][4];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) G1[i][j] = pairing(rowv(B1, i), rowv(B1, j));
    // candidate vectors in O2 by norm
    MatZ A2 = norm_gram2(A, O2);
    Int maxnorm = 0;
    for (int i = 1; i < 4; ++i) {
        Rat n = G1[i][i] / 2;
        maxnorm = std::max(maxnorm, n.get_num());
    }
    std::vector<std::vector<QuatCoords>> by_norm(to_long(maxnorm) + 1);
    enumerate_vectors(A2, maxnorm, [&](const std::vector<Int>& v, const Int& s) {
        QuatCoords w{Rat(0), Rat(0), Rat(0), Rat(0)};
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) w[c] += Rat(v[r]) * O2.basis(r, c);
        by_norm[to_long(s)].push_back(w);
        by_norm[to_long(s)].push_back({-w[0], -w[1], -w[2], -w[3]});
    });
    QuatCoords img[4];
    img[0] = {Rat(1), Rat(0), Rat(0), Rat(0)};
    std::function<bool(int)> rec = [&](int r) -> bool {
        if (r == 4) return true;
        Rat nr = G1[r][r] / 2;
        for (auto& w : by_norm[to_long(nr.get_num())]) {
            bool ok = true;
            for (int s = 0; s < r && ok; ++s)
                if (pairing(w, img[s]) != G1[r][s]) ok = false;
            if (!ok) continue;
            img[r] = w;
            if (rec(r + 1)) return true;
        }
        return false;
    };
    return rec(1);
}

std::vector<int> type_partition(const ClassSet& cs)
{
    long h = cs.h();
    std::vector<int> comp(h, -1);
    int next = 0;
    for (long i = 0; i < h; ++i) {
        if (comp[i] >= 0) continue;
        comp[i] = next;
        for (long j = i + 1; j < h; ++j) {
            if (comp[j] >= 0) continue;
            if (orders_isomorphic(cs.order.algebra, cs.left_orders[i].lattice,
                                  cs.left_orders[j].lattice))
                comp[j] = next;
        }
        ++next;
    }
    return comp;
}

} // namespace qp
