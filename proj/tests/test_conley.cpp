#include "doctest.h"

#include "fixtures.hpp"

#include "cmvf/conley.hpp"

#include <random>

using namespace cmvf;
using namespace fixtures;

namespace {

const CellId A = 0, B = 1, AB = 2;

struct Pipeline {
    MultivectorField field;
    FlowGraph graph;
    MorseDecomposition morse;

    explicit Pipeline(MultivectorField v) : field(std::move(v)), graph(field), morse(finest_morse_decomposition(graph)) {}
    Pipeline(const Pipeline&) = delete;
};

// Delta' = S Delta S for some diagonal sign matrix S.
bool equal_up_to_signs(const SparseMatrix& a, const SparseMatrix& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        return false;
    const std::size_t n = a.cols();
    const Field F = a.field();
    std::vector<int> sign(n, 0);
    for (std::size_t start = 0; start < n; ++start) {
        if (sign[start])
            continue;
        sign[start] = 1;
        std::vector<std::size_t> queue{start};
        for (std::size_t h = 0; h < queue.size(); ++h) {
            const std::size_t u = queue[h];
            for (std::size_t v = 0; v < n; ++v) {
                for (auto [i, j] : {std::pair{u, v}, std::pair{v, u}}) {
                    const Scalar x = a.at(i, j), y = b.at(i, j);
                    if (x.is_zero() != y.is_zero())
                        return false;
                    if (x.is_zero())
                        continue;
                    const int rel = x == y ? 1 : (x == -y ? -1 : 0);
                    if (rel == 0)
                        return false;
                    const int want = sign[u] * rel;
                    if (sign[v] == 0) {
                        sign[v] = want;
                        queue.push_back(v);
                    } else if (sign[v] != want) {
                        return false;
                    }
                }
            }
        }
    }
    return true;
}

} // namespace

TEST_CASE("conley index")
{
    const auto X = interval();
    const auto S = MultivectorField::singletons(X);
    CHECK(conley_index(S, CellSet{AB}) == BettiVector{0, 1});
    CHECK(conley_index(S, CellSet{A}) == BettiVector{1});
    CHECK(conley_index(S, X.all_cells()) == BettiVector{1, 0});
    const MultivectorField V(X, {{A, AB}, {B}});
    CHECK_THROWS_AS(conley_index(V, CellSet{A}), Error);
    CHECK(conley_index(V, CellSet{A, AB}).is_zero());
    CHECK_FALSE(conley_index(V, CellSet{B}).is_zero());
}

TEST_CASE("connection matrix of the interval")
{
    const auto X = interval();
    Pipeline P(MultivectorField::singletons(X));
    const auto cm = connection_matrix(P.graph, P.morse);
    REQUIRE(cm.generators.size() == 3);
    const Field Q = Field::rationals();
    CHECK(cm.delta.at(0, 2) == Scalar(Q, -1));
    CHECK(cm.delta.at(1, 2) == Scalar(Q, 1));
    std::vector<unsigned> dims;
    for (const auto& g : cm.generators)
        dims.push_back(g.dim);
    CHECK(graded_homology(cm.delta, dims) == BettiVector{1, 0});
    const auto report = verify_connection_matrix(cm, P.graph, P.morse);
    CHECK(report.ok());
    CHECK(report.exhaustive);
    REQUIRE(report.forced.size() == 2);
    for (const auto& f : report.forced) {
        CHECK(f.from == 2);
        CHECK(f.connection_nonempty);
    }
}

TEST_CASE("trivial field and hollow triangle")
{
    const auto T = full_triangle();
    Pipeline P(MultivectorField(T, {T.all_cells()}));
    const auto cm = connection_matrix(P.graph, P.morse);
    REQUIRE(P.morse.size() == 1);
    CHECK(cm.delta.is_zero());
    CHECK(cm.generators.size() == 1);

    const auto H = hollow_triangle();
    Pipeline Q(MultivectorField::singletons(H));
    const auto cmh = connection_matrix(Q.graph, Q.morse);
    std::vector<unsigned> dims;
    for (const auto& g : cmh.generators)
        dims.push_back(g.dim);
    CHECK(graded_homology(cmh.delta, dims) == BettiVector{1, 1});
    CHECK(verify_connection_matrix(cmh, Q.graph, Q.morse).ok());
}

TEST_CASE("negative controls")
{
    const auto X = interval();
    Pipeline P(MultivectorField::singletons(X));
    auto cm = connection_matrix(P.graph, P.morse);
    const Field Q = Field::rationals();

    auto lower = cm;
    lower.delta.set(2, 0, Scalar(Q, 1));
    const auto r1 = verify_connection_matrix(lower, P.graph, P.morse);
    CHECK_FALSE(r1.upper_triangular);
    CHECK_FALSE(r1.ok());

    // a 3-step chain where delta squared is forced nonzero
    const auto T = full_triangle();
    Pipeline R(MultivectorField::singletons(T));
    auto cmt = connection_matrix(R.graph, R.morse);
    const auto face = cmt.generators.size() - 1;
    cmt.delta.set(0, 3, Scalar(Q, 1));
    cmt.delta.set(3, face, Scalar(Q, 1));
    const auto r2 = verify_connection_matrix(cmt, R.graph, R.morse);
    CHECK_FALSE(r2.square_zero);
    CHECK_FALSE(r2.ok());

    auto wrong_degree = cm;
    wrong_degree.delta.set(0, 1, Scalar(Q, 1));
    CHECK_FALSE(verify_connection_matrix(wrong_degree, P.graph, P.morse).ok());
}

TEST_CASE("connection matrix properties on random fields")
{
    std::mt19937_64 rng(2024);
    for (int t = 0; t < 60; ++t) {
        const Field F = t % 3 == 0 ? Field::rationals() : (t % 3 == 1 ? Field::prime(2) : Field::prime(3));
        const auto X = random_simplicial(rng, 6, F);
        Pipeline P(minimal_mvf(X, random_transitions(rng, X, 0.5, 0.4)));
        const auto cm = connection_matrix(P.graph, P.morse);
        VerifyOptions serial;
        serial.exec = Execution::serial;
        const auto report = verify_connection_matrix(cm, P.graph, P.morse);
        const auto reference = verify_connection_matrix(cm, P.graph, P.morse, serial);
        CHECK(report.ok());
        CHECK(report.failures == reference.failures);
        CHECK(report.intervals_checked == reference.intervals_checked);
        for (std::size_t p = 0; p < P.morse.size(); ++p) {
            const auto& mi = P.morse.morse_sets[p];
            CHECK(conley_index(P.field, mi) == betti(subcomplex(X, mi)));
        }
        // other pivot orders still satisfy every property
        for (auto order : {PivotOrder::highest_id, PivotOrder::shuffled}) {
            const auto other = connection_matrix(P.graph, P.morse, {order, static_cast<std::uint64_t>(t)});
            CHECK(verify_connection_matrix(other, P.graph, P.morse).ok());
        }
    }
}

TEST_CASE("gradient Forman fields have a unique connection matrix")
{
    std::mt19937_64 rng(77);
    int tested = 0;
    for (int t = 0; t < 400 && tested < 40; ++t) {
        const auto X = random_simplicial(rng, 6, Field::rationals());
        // random arrows: a cell paired with one cofacet
        std::vector<CellSet> arrows;
        std::vector<char> used(X.size(), 0);
        for (CellId c = 0; c < X.size(); ++c) {
            const auto cf = X.cofacets(c);
            if (used[c] || cf.empty() || rng() % 2)
                continue;
            const CellId up = cf[rng() % cf.size()].cell;
            if (used[up])
                continue;
            used[c] = used[up] = 1;
            arrows.push_back(CellSet{c, up});
        }
        const auto V = minimal_mvf(X, arrows);
        bool forman = true;
        for (const auto& mv : V.multivectors())
            forman = forman && mv.size() <= 2;
        if (!forman)
            continue;
        Pipeline P{MultivectorField(V)};
        bool gradient = true;
        for (const auto& m : P.morse.morse_sets)
            gradient = gradient && m.size() == 1;
        if (!gradient)
            continue;
        ++tested;
        const auto base = connection_matrix(P.graph, P.morse);
        for (auto order : {PivotOrder::highest_id, PivotOrder::shuffled}) {
            for (std::uint64_t seed = 0; seed < 3; ++seed) {
                const auto other = connection_matrix(P.graph, P.morse, {order, seed});
                CHECK(other.generators == base.generators);
                CHECK(equal_up_to_signs(base.delta, other.delta));
            }
        }
    }
    CHECK(tested >= 20);
}
