#include "doctest.h"

#include "fixtures.hpp"

#include "cmvf/mvf.hpp"

#include <random>

using namespace cmvf;
using namespace fixtures;

namespace {

ErrorCode code_of(auto&& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return ErrorCode::ConfigError;
}

// interval ids: A = 0, B = 1, AB = 2
const CellId A = 0, B = 1, AB = 2;

} // namespace

TEST_CASE("validate_mvf")
{
    const auto X = interval();
    CHECK_NOTHROW(validate_mvf(X, std::vector<CellSet>{{A}, {B}, {AB}}));
    CHECK_NOTHROW(validate_mvf(X, std::vector<CellSet>{{A, AB}, {B}}));
    CHECK_NOTHROW(validate_mvf(X, std::vector<CellSet>{{A, B}, {AB}}));
    CHECK(code_of([&] { validate_mvf(X, std::vector<CellSet>{{A, AB}, {AB, B}}); }) == ErrorCode::NotPartition);
    CHECK(code_of([&] { validate_mvf(X, std::vector<CellSet>{{A}, {AB}}); }) == ErrorCode::NotPartition);
    const auto T = full_triangle();
    std::vector<CellSet> bad{{0, 6}, {1}, {2}, {3}, {4}, {5}};
    CHECK(code_of([&] { validate_mvf(T, bad); }) == ErrorCode::NotLocallyClosed);
}

TEST_CASE("classify")
{
    const auto X = interval();
    const MultivectorField V(X, {{A, AB}, {B}});
    CHECK_FALSE(V.is_critical(V.index_of(A)));
    CHECK(V.is_critical(V.index_of(B)));
    const auto S = MultivectorField::singletons(X);
    CHECK(S.is_critical(S.index_of(AB)));
    CHECK(S.is_critical(S.index_of(A)));
}

TEST_CASE("classify serial and parallel agree with the subcomplex route")
{
    std::mt19937_64 rng(41);
    for (int t = 0; t < 40; ++t) {
        const auto X = random_simplicial(rng, 6, t % 2 ? Field::rationals() : Field::prime(2));
        const auto V = minimal_mvf(X, random_transitions(rng, X, 0.5, 0.5));
        const auto serial = classify(X, V.multivectors(), Execution::serial);
        const auto parallel = classify(X, V.multivectors(), Execution::parallel);
        CHECK(serial == parallel);
        for (std::size_t i = 0; i < V.size(); ++i) {
            const bool critical = !betti(subcomplex(X, V.multivector(i))).is_zero();
            CHECK((serial[i] == Tag::critical) == critical);
        }
    }
}

TEST_CASE("minimal_mvf examples")
{
    const auto X = interval();
    CHECK(minimal_mvf(X, std::vector<CellSet>{}).multivectors() == std::vector<CellSet>{{A}, {B}, {AB}});
    CHECK(minimal_mvf(X, std::vector<CellSet>{{A, AB}}).multivectors() == std::vector<CellSet>{{A, AB}, {B}});
    CHECK(minimal_mvf(X, std::vector<CellSet>{{A, AB}, {B, AB}}).multivectors() == std::vector<CellSet>{{A, B, AB}});
    // a vertex with a 2-cell forces the edges in between
    const auto T = full_triangle();
    const auto V = minimal_mvf(T, std::vector<CellSet>{{0, 6}});
    CHECK(V.of(0) == CellSet{0, 3, 4, 6});
}

TEST_CASE("minimal_mvf matches exhaustive search on tiny complexes")
{
    for (const auto& X : tiny_complexes()) {
        const auto subsets = all_subsets(X);
        std::vector<std::vector<CellSet>> collections{{}};
        for (std::size_t i = 1; i < subsets.size(); ++i) {
            collections.push_back({subsets[i]});
            for (std::size_t j = i + 1; j < subsets.size(); j += 3)
                collections.push_back({subsets[i], subsets[j]});
        }
        for (const auto& D : collections) {
            const auto minimal = brute_force_minimal(X, D);
            REQUIRE(minimal.size() == 1);
            const auto V = minimal_mvf(X, D);
            CHECK(V.multivectors() == minimal[0]);
            CHECK_NOTHROW(validate_mvf(V));
        }
    }
}

TEST_CASE("v_hull and compatibility")
{
    const auto X = interval();
    const auto S = MultivectorField::singletons(X);
    const MultivectorField V(X, {{A, AB}, {B}});
    CHECK(v_hull(S, CellSet{A}) == CellSet{A});
    CHECK(v_hull(V, CellSet{AB}) == CellSet{A, AB});
    CHECK(v_hull(S, CellSet{A, B}) == CellSet{A, B});
    CHECK(is_v_compatible(V, CellSet{A, AB}));
    CHECK_FALSE(is_v_compatible(V, CellSet{A}));
    CHECK(is_v_compatible(V, CellSet{}));

    std::mt19937_64 rng(8);
    for (int t = 0; t < 30; ++t) {
        const auto Y = random_simplicial(rng, 6, Field::prime(2));
        const auto W = minimal_mvf(Y, random_transitions(rng, Y, 0.4, 0.5));
        std::vector<CellId> a, b;
        for (CellId c = 0; c < Y.size(); ++c) {
            if (rng() % 4 == 0)
                a.push_back(c);
            if (rng() % 4 == 0)
                b.push_back(c);
        }
        const CellSet sa(a);
        const CellSet sab = set_union(sa, CellSet(b));
        const auto h = v_hull(W, sa);
        CHECK(h.includes(sa));
        CHECK(v_hull(W, h) == h);
        CHECK(v_hull(W, sab).includes(h));
        CHECK(is_v_compatible(W, h));
        CHECK(is_locally_closed(Y, h));
    }
}
