#include "doctest.h"

#include <random>

#include "fusalg/mask.hpp"

using fusalg::SubsetMask;

TEST_CASE("mask basics") {
    SubsetMask m(100);
    CHECK(m.none());
    m.set(0);
    m.set(64);
    m.set(99);
    CHECK(m.count() == 3);
    CHECK(m.test(64));
    CHECK_FALSE(m.test(63));
    CHECK(m.first() == 0);
    CHECK(m.next(0) == 64);
    CHECK(m.next(64) == 99);
    CHECK(m.next(99) == -1);
    CHECK(m.to_indices() == std::vector<int>{0, 64, 99});
    m.reset(64);
    CHECK(m.count() == 2);
    CHECK_THROWS_AS(m.set(100), fusalg::input_error);
}

TEST_CASE("mask set algebra") {
    SubsetMask a(10, {1, 2, 3});
    SubsetMask b(10, {3, 4});
    CHECK((a & b) == SubsetMask(10, {3}));
    CHECK((a | b) == SubsetMask(10, {1, 2, 3, 4}));
    CHECK(a.intersects(b));
    CHECK(SubsetMask(10, {1, 3}).is_subset_of(a));
    CHECK_FALSE(a.is_subset_of(b));
    CHECK(a.complement().count() == 7);
    CHECK(SubsetMask::full(10).count() == 10);
    CHECK(SubsetMask(10, {0}).any_beyond_zero() == false);
    CHECK(SubsetMask(10, {0, 7}).any_beyond_zero() == true);
    CHECK(a.to_string() == "{1,2,3}");
}

TEST_CASE("mask order is lexicographic on index lists") {
    // {0,...} sorts before {1,...}; shorter prefix with smaller first element wins.
    CHECK(SubsetMask(70, {0, 65}) < SubsetMask(70, {1, 2}));
    CHECK(SubsetMask(70, {1, 2}) < SubsetMask(70, {2}));
    CHECK_FALSE(SubsetMask(70, {2}) < SubsetMask(70, {1, 64}));
}

TEST_CASE("mask properties on random sets") {
    std::mt19937 rng(20240611);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 1 + int(rng() % 130);
        SubsetMask a(n), b(n);
        for (int i = 0; i < n; ++i) {
            if (rng() & 1) a.set(i);
            if (rng() & 1) b.set(i);
        }
        CHECK(a.complement().complement() == a);
        CHECK((a & b).is_subset_of(a));
        CHECK(a.is_subset_of(a | b));
        CHECK((a & b).count() + (a | b).count() == a.count() + b.count());
        CHECK(((a ^ b) == ((a | b) & (a & b).complement())));
        bool sym = a.is_subset_of(b) && b.is_subset_of(a);
        CHECK(sym == (a == b));
    }
}
