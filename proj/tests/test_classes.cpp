#include "doctest.h"

#include "qp/classes.hpp"

using namespace qp;

namespace {

ClassSet classes_of_disc(long d, long level = 1)
{
    QuaternionAlgebra A = algebra_of_discriminant(Int(d));
    QuaternionOrder O = maximal_order(A);
    if (level > 1) O = eichler_order(O, Int(level));
    return enumerate_classes(O);
}

} // namespace

TEST_CASE("mass formula values")
{
    QuaternionAlgebra A19 = algebra_of_discriminant(Int(19));
    CHECK(mass_formula(maximal_order(A19)) == Rat(3, 2));
    QuaternionAlgebra A11 = algebra_of_discriminant(Int(11));
    CHECK(mass_formula(maximal_order(A11)) == Rat(5, 6));
    QuaternionAlgebra A13 = algebra_of_discriminant(Int(13));
    CHECK(mass_formula(eichler_order(maximal_order(A13), Int(5))) == 6);
}

TEST_CASE("class set of disc 11")
{
    ClassSet cs = classes_of_disc(11);
    REQUIRE(cs.h() == 2);
    // weights {2,3}; the trivial class carries w=2 here, so canonical order is ascending
    CHECK(cs.weights[0] == 2);
    CHECK(cs.weights[1] == 3);
    CHECK(cs.mass == Rat(5, 6));
    Rat acc(0);
    for (auto& w : cs.weights) acc += Rat(1) / Rat(w);
    CHECK(acc == cs.mass);
    // h = t: the two classes are distinct types, isometry search must fail
    CHECK(cs.t() == 2);
    auto tp = type_partition(cs);
    CHECK(tp == cs.type_map);
    CHECK_FALSE(
        orders_isomorphic(cs.order.algebra, cs.left_orders[0].lattice, cs.left_orders[1].lattice));
    // distinct classes: representatives are inequivalent
    CHECK_FALSE(is_equivalent(cs.order, cs.reps[0], cs.reps[1]));
    CHECK(is_equivalent(cs.order, cs.reps[0], cs.reps[0]));
    // I ~ 2I
    RightIdeal twoI{lattice_scale(cs.reps[0].lattice, Rat(2)), Rat(4)};
    CHECK(is_equivalent(cs.order, cs.reps[0], twoI));
}

TEST_CASE("class set of disc 19: types and mass")
{
    ClassSet cs = classes_of_disc(19);
    CHECK(cs.mass == Rat(3, 2));
    Rat acc(0);
    for (auto& w : cs.weights) acc += Rat(1) / Rat(w);
    CHECK(acc == Rat(3, 2));
    CHECK(cs.t() == 2);
    CHECK(type_partition(cs) == cs.type_map);
}

TEST_CASE("class set of disc 65 = 13 * 5")
{
    ClassSet cs = classes_of_disc(13, 5);
    CHECK(cs.mass == 6);
    Rat acc(0);
    for (auto& w : cs.weights) acc += Rat(1) / Rat(w);
    CHECK(acc == 6);
    CHECK(cs.t() == 3);
    CHECK(type_partition(cs) == cs.type_map);
    // fiber sizes are powers of two dividing 2^(number of primes of disc)
    std::vector<int> fiber(cs.t(), 0);
    for (int t : cs.type_map) ++fiber[t];
    for (int f : fiber) CHECK((f == 1 || f == 2 || f == 4));
}

TEST_CASE("neighbors: counts and norms")
{
    ClassSet cs = classes_of_disc(11);
    auto nb = p_neighbors(cs.order, cs.reps[0], Int(2));
    REQUIRE(nb.size() == 3);
    for (auto& J : nb) CHECK(J.norm == 2 * cs.reps[0].norm);
    // neighbors of neighbors at 2 contain ideals equivalent to the start
    bool found = false;
    for (auto& J : nb)
        for (auto& K : p_neighbors(cs.order, J, Int(2)))
            if (is_equivalent(cs.order, cs.reps[0], K)) found = true;
    CHECK(found);
    CHECK_THROWS_AS(p_neighbors(cs.order, cs.reps[0], Int(11)), domain_error);
}

TEST_CASE("atkin-lehner involutions")
{
    ClassSet cs11 = classes_of_disc(11);
    auto perm = cs11.al_perms.at(Int(11));
    for (long i = 0; i < cs11.h(); ++i) {
        CHECK(perm[perm[i]] == i);
        // weights constant on orbits
        CHECK(cs11.weights[perm[i]] == cs11.weights[i]);
    }
    // h = t at disc 11 forces the identity on classes
    CHECK(perm[0] == 0);
    CHECK(perm[1] == 1);

    ClassSet cs65 = classes_of_disc(13, 5);
    for (auto& [p, pm] : cs65.al_perms) {
        for (long i = 0; i < cs65.h(); ++i) {
            CHECK(pm[pm[i]] == i);
            CHECK(cs65.weights[pm[i]] == cs65.weights[i]);
        }
    }
    // orbits of the AL group = type fibers (already built that way; recheck
    // against the isometry partition computed independently in other tests)
    CHECK(cs65.al_perms.size() == 2);
}

TEST_CASE("is_equivalent is an equivalence relation on samples")
{
    ClassSet cs = classes_of_disc(19);
    std::vector<RightIdeal> sample = cs.reps;
    for (auto& J : p_neighbors(cs.order, cs.reps[0], Int(3))) sample.push_back(J);
    for (auto& I : sample) CHECK(is_equivalent(cs.order, I, I));
    for (size_t a = 0; a < sample.size(); ++a)
        for (size_t b = a + 1; b < sample.size(); ++b) {
            bool ab = is_equivalent(cs.order, sample[a], sample[b]);
            bool ba = is_equivalent(cs.order, sample[b], sample[a]);
            CHECK(ab == ba);
        }
    // transitivity spot-check through class representatives
    for (auto& I : sample) {
        int cls = -1;
        for (long j = 0; j < cs.h(); ++j)
            if (is_equivalent(cs.order, cs.reps[j], I)) {
                CHECK(cls == -1); // equivalent to exactly one representative
                cls = (int)j;
            }
        CHECK(cls >= 0);
    }
}

TEST_CASE("even discriminant allowed on the class-set path")
{
    // disc(D) = 11, level 2: mass 5/2, h = 3, old-form checks live elsewhere
    QuaternionAlgebra A = algebra_of_discriminant(Int(11));
    QuaternionOrder O = eichler_order(maximal_order(A), Int(2));
    CHECK(O.reduced_discriminant == 22);
    ClassSet cs = enumerate_classes(O);
    CHECK(cs.mass == Rat(5, 2));
    Rat acc(0);
    for (auto& w : cs.weights) acc += Rat(1) / Rat(w);
    CHECK(acc == cs.mass);
}
