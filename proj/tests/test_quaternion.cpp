#include "doctest.h"

#include "qp/quaternion.hpp"

using namespace qp;

namespace {

// exhaustive 2-adic oracle: does x^2 = a y^2 + b z^2 have a primitive
// solution mod 2^k
bool hilbert2_oracle(long a, long b)
{
    long k = 10;
    long m = 1L << k;
    for (long x = 0; x < m; ++x)
        for (long y = 0; y < m; ++y)
            for (long z = 0; z < m; ++z) {
                if (x % 2 == 0 && y % 2 == 0 && z % 2 == 0) continue;
                long lhs = (x * x - a * y * y - b * z * z) % m;
                if ((lhs % m + m) % m == 0) return true;
            }
    return false;
}

MatQ basis23()
{
    // 1,  y,  y/2 + z/2,  1/2 + x/2  for x^2=-23, y^2=-1 (coords 1,i,j,k with i=x, j=y, k=z)
    MatQ B(4, 4);
    B(0, 0) = 1;
    B(1, 2) = 1;
    B(2, 2) = Rat(1, 2);
    B(2, 3) = Rat(1, 2);
    B(3, 0) = Rat(1, 2);
    B(3, 1) = Rat(1, 2);
    return B;
}

MatQ basis41()
{
    // 1,  1/2 + y/2,  1/2 + x/2 + y/6 + z/6,  1/2 - y/6 + z/3  for x^2=-41, y^2=-3
    MatQ B(4, 4);
    B(0, 0) = 1;
    B(1, 0) = Rat(1, 2);
    B(1, 2) = Rat(1, 2);
    B(2, 0) = Rat(1, 2);
    B(2, 1) = Rat(1, 2);
    B(2, 2) = Rat(1, 6);
    B(2, 3) = Rat(1, 6);
    B(3, 0) = Rat(1, 2);
    B(3, 2) = Rat(-1, 6);
    B(3, 3) = Rat(1, 3);
    return B;
}

} // namespace

TEST_CASE("hilbert symbol")
{
    CHECK(hilbert_symbol(Int(-1), Int(-1), Int(0)) == -1);
    CHECK(hilbert_symbol(Int(1), Int(7), Int(3)) == 1);
    CHECK(hilbert_symbol(Int(1), Int(-5), Int(2)) == 1); // a square always splits
    // (-1,-1,2) = -1, cross-checked by the exhaustive 2-adic search
    CHECK(hilbert_symbol(Int(-1), Int(-1), Int(2)) == -1);
    CHECK_FALSE(hilbert2_oracle(-1, -1));
    CHECK(hilbert2_oracle(-1, 1));
    CHECK(hilbert_symbol(Int(-1), Int(1), Int(2)) == 1);
    CHECK(hilbert2_oracle(-1, 7) == (hilbert_symbol(Int(-1), Int(7), Int(2)) == 1));
    CHECK(hilbert2_oracle(-3, -5) == (hilbert_symbol(Int(-3), Int(-5), Int(2)) == 1));
}

TEST_CASE("hilbert product formula on assorted pairs")
{
    std::vector<std::pair<long, long>> pairs = {{-1, -1}, {-23, -1}, {-41, -3}, {-11, -1},
                                                {-13, -2}, {15, 7},  {-6, 10}};
    for (auto& [a, b] : pairs) {
        int prod = hilbert_symbol(Int(a), Int(b), Int(0));
        for (auto& p : squarefree_prime_divisors(Int(2 * a * b)))
            prod *= hilbert_symbol(Int(a), Int(b), p);
        CHECK(prod == 1);
    }
}

TEST_CASE("algebra_of_discriminant certified outputs")
{
    QuaternionAlgebra A23 = algebra_of_discriminant(Int(23));
    CHECK(A23.a == -23);
    CHECK(A23.b == -1);
    CHECK(A23.definite);
    REQUIRE(A23.ramified_primes.size() == 1);
    CHECK(A23.ramified_primes[0] == 23);

    QuaternionAlgebra A41 = algebra_of_discriminant(Int(41));
    CHECK(A41.a == -41);
    CHECK(A41.b == -3);

    QuaternionAlgebra A11 = algebra_of_discriminant(Int(11));
    CHECK(A11.disc() == 11);
    CHECK(A11.definite);

    CHECK(algebra_of_discriminant(Int(13)).b == -2); // 13 = 5 mod 8
    CHECK(algebra_of_discriminant(Int(105)).disc() == 105); // composite 3*5*7

    CHECK_THROWS_AS(algebra_of_discriminant(Int(12)), domain_error);
    CHECK_THROWS_AS(algebra_of_discriminant(Int(15)), domain_error); // two factors
}

TEST_CASE("paper order bases for disc 23 and 41")
{
    QuaternionAlgebra A23 = make_algebra(Int(-23), Int(-1));
    QuaternionOrder O23 = order_from_basis(A23, basis23());
    CHECK(O23.reduced_discriminant == 23);
    CHECK(O23.level == 1);

    QuaternionAlgebra A41 = make_algebra(Int(-41), Int(-3));
    QuaternionOrder O41 = order_from_basis(A41, basis41());
    CHECK(O41.reduced_discriminant == 41);
    CHECK(O41.level == 1);
}

TEST_CASE("maximal orders across discriminants")
{
    for (long d : {11, 19, 23, 41, 13, 3, 7, 105}) {
        QuaternionAlgebra A = algebra_of_discriminant(Int(d));
        QuaternionOrder O = maximal_order(A);
        CHECK(O.reduced_discriminant == d);
        CHECK(O.level == 1);
        CHECK(is_order(A, O.lattice));
        // discriminant squared equals the trace-pairing determinant
        MatZ G = norm_gram2(A, O.lattice);
        CHECK(det(G) == Int(d) * Int(d));
        MatQ half(4, 4);
        for (int i = 0; i < 16; ++i) half.a[i] = Rat(G.a[i]) / 2;
        CHECK(is_positive_definite(half));
    }
}

TEST_CASE("eichler orders")
{
    QuaternionAlgebra A13 = algebra_of_discriminant(Int(13));
    QuaternionOrder Omax = maximal_order(A13);
    QuaternionOrder O65 = eichler_order(Omax, Int(5));
    CHECK(O65.reduced_discriminant == 65);
    CHECK(O65.level == 5);
    CHECK(eichler_order(Omax, Int(1)).reduced_discriminant == 13);
    CHECK_THROWS_AS(eichler_order(Omax, Int(13)), domain_error);
    CHECK_THROWS_AS(eichler_order(Omax, Int(4)), domain_error);

    // at p | M the local splitting maps the order to upper triangular mod p
    LocalSplitting sp = local_splitting(O65, Int(5), 1);
    for (int r = 0; r < 4; ++r) {
        std::vector<Int> e(4, Int(0));
        e[r] = 1;
        auto img = sp.image(e);
        CHECK(mod_floor(img[2], Int(5)) == 0);
    }
}

TEST_CASE("local splitting is a ring homomorphism")
{
    QuaternionAlgebra A = algebra_of_discriminant(Int(11));
    QuaternionOrder O = maximal_order(A);
    for (long pk : {2, 3, 7}) {
        long k = pk == 2 ? 3 : 2;
        LocalSplitting sp = local_splitting(O, Int(pk), k);
        auto one = solve_left(O.basis(), {Rat(1), Rat(0), Rat(0), Rat(0)});
        std::vector<Int> onec(4);
        for (int i = 0; i < 4; ++i) onec[i] = (*one)[i].get_num();
        auto id = sp.image(onec);
        CHECK(id[0] == 1);
        CHECK(id[1] == 0);
        CHECK(id[2] == 0);
        CHECK(id[3] == 1);
        // all 16 basis products agree with matrix products mod p^k
        MatQ inv = inverse(O.basis());
        for (int r = 0; r < 4; ++r)
            for (int s = 0; s < 4; ++s) {
                QuatCoords prod = quat_mul(A, O.lattice.row(r), O.lattice.row(s));
                std::vector<Rat> v = {prod[0], prod[1], prod[2], prod[3]};
                auto c = v * inv;
                std::vector<Int> ci(4);
                for (int j = 0; j < 4; ++j) ci[j] = c[j].get_num();
                auto lhs = sp.image(ci);
                std::vector<Int> er(4, Int(0)), es(4, Int(0));
                er[r] = 1;
                es[s] = 1;
                auto mr = sp.image(er), ms = sp.image(es);
                std::array<Int, 4> rhs = {mod_floor(mr[0] * ms[0] + mr[1] * ms[2], sp.pk),
                                          mod_floor(mr[0] * ms[1] + mr[1] * ms[3], sp.pk),
                                          mod_floor(mr[2] * ms[0] + mr[3] * ms[2], sp.pk),
                                          mod_floor(mr[2] * ms[1] + mr[3] * ms[3], sp.pk)};
                for (int j = 0; j < 4; ++j) CHECK(lhs[j] == rhs[j]);
            }
        // coherence: images mod p^k reduce to the images mod p^(k-1)
        if (k >= 2) {
            LocalSplitting lo = local_splitting(O, Int(pk), k - 1);
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c)
                    CHECK(mod_floor(sp.images[r][c], lo.pk) == lo.images[r][c]);
        }
    }
    CHECK_THROWS_AS(local_splitting(O, Int(11), 1), domain_error);
}

TEST_CASE("quat element invariants")
{
    QuaternionAlgebra A = make_algebra(Int(-23), Int(-1));
    QuatCoords u{Rat(1, 2), Rat(1, 2), Rat(0), Rat(0)};
    Rat tr = quat_trace(u), nm = quat_norm(A, u);
    CHECK(tr == 1);
    CHECK(nm == Rat(1) / 4 + Rat(23) / 4);
    // x^2 - tr*x + nm = 0
    QuatCoords sq = quat_mul(A, u, u);
    QuatCoords expect;
    for (int i = 0; i < 4; ++i) expect[i] = tr * u[i];
    expect[0] -= nm;
    for (int i = 0; i < 4; ++i) CHECK(sq[i] == expect[i]);
}
