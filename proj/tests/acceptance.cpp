// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
// Usage: cmvf_acceptance <path to the cmvf executable>

#include "fixtures.hpp"

#include "cmvf/pipeline.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

using namespace cmvf;
using namespace fixtures;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// A complex with a field and its decomposition; the complex is held by
// pointer so the field's reference stays valid.
struct Example {
    std::string name;
    std::shared_ptr<LefschetzComplex> complex;
    std::shared_ptr<FlowGraph> graph;
    MorseDecomposition morse;
};

Example example(std::string name, LefschetzComplex X, const std::function<MultivectorField(const LefschetzComplex&)>& make)
{
    Example e;
    e.name = std::move(name);
    e.complex = std::make_shared<LefschetzComplex>(std::move(X));
    e.graph = std::make_shared<FlowGraph>(make(*e.complex));
    e.morse = finest_morse_decomposition(*e.graph);
    return e;
}

Example from_analysis(const std::string& name, const Analysis& a)
{
    Example e;
    e.name = name;
    e.complex = std::shared_ptr<LefschetzComplex>(std::shared_ptr<void>{}, &a.mesh->complex);
    e.graph = std::shared_ptr<FlowGraph>(std::shared_ptr<void>{}, a.graph.get());
    e.morse = a.morse;
    return e;
}

// Signature: number of Morse sets whose Conley index is F in degree k and zero elsewhere.
std::map<std::size_t, std::size_t> signature(const MorseDecomposition& m, bool& clean)
{
    std::map<std::size_t, std::size_t> sig;
    clean = true;
    for (const auto& ch : m.conley_indices) {
        const auto t = ch.trimmed();
        if (ch.total() != 1) {
            clean = false;
            continue;
        }
        ++sig[t.size() - 1];
    }
    return sig;
}

std::string describe(const std::map<std::size_t, std::size_t>& sig)
{
    std::string s;
    for (auto it = sig.rbegin(); it != sig.rend(); ++it)
        s += (s.empty() ? "" : ", ") + std::string("CH") + std::to_string(it->first) + ":" + std::to_string(it->second);
    return s;
}

std::vector<std::size_t> as_indices(unsigned mask, std::size_t n)
{
    std::vector<std::size_t> out;
    for (std::size_t p = 0; p < n; ++p)
        if (mask >> p & 1u)
            out.push_back(p);
    return out;
}

// ------------------------------------------------------------------ 1, 2, 3

Outcome criterion_planar(const Analysis& a, double elapsed)
{
    bool clean = false;
    const auto sig = signature(a.morse, clean);
    const std::map<std::size_t, std::size_t> want{{0, 4}, {1, 4}, {2, 1}};
    const bool ok = a.morse.size() == 9 && clean && sig == want && elapsed < 60;
    std::ostringstream d;
    d << a.morse.size() << " Morse sets, " << describe(sig) << (clean ? "" : ", other groups nonzero") << ", "
      << a.complex().size() << " cells, " << std::fixed << std::setprecision(1) << elapsed << " s";
    return {ok, d.str()};
}

Outcome criterion_planar_interval(const Analysis& a)
{
    auto I = indices_with_conley_degree(a.morse, 0);
    const auto saddles = indices_with_conley_degree(a.morse, 1);
    I.insert(I.end(), saddles.begin(), saddles.end());
    std::sort(I.begin(), I.end());
    const auto cells = morse_interval(*a.graph, a.morse, I);
    const bool down = a.morse.is_down_set(I);
    const bool attractor = is_attractor(*a.graph, cells);
    std::size_t contained = 0;
    for (auto p : I)
        contained += cells.includes(a.morse.morse_sets[p]);
    const bool ok = I.size() == 8 && down && attractor && contained == 8;
    std::ostringstream d;
    d << "|I| = " << I.size() << ", down set " << down << ", is_attractor " << attractor << ", contains "
      << contained << "/8 Morse sets, " << cells.size() << " cells";
    return {ok, d.str()};
}

Outcome criterion_allencahn(const Analysis& a, double elapsed)
{
    bool clean = false;
    const auto sig = signature(a.morse, clean);
    const std::map<std::size_t, std::size_t> want{{0, 2}, {1, 2}, {2, 2}, {3, 1}};
    const bool ok = a.morse.size() == 7 && clean && sig == want && elapsed < 600;
    std::ostringstream d;
    d << a.morse.size() << " Morse sets, " << describe(sig) << (clean ? "" : ", other groups nonzero") << ", "
      << a.complex().size() << " cells, " << std::fixed << std::setprecision(1) << elapsed << " s";
    return {ok, d.str()};
}

// ------------------------------------------------------------------ 4

std::vector<Example> fixture_examples()
{
    std::vector<Example> out;
    auto singletons = [](const LefschetzComplex& X) { return MultivectorField::singletons(X); };
    out.push_back(example("interval/singletons", interval(), singletons));
    out.push_back(example("interval/arrow", interval(), [](const LefschetzComplex& X) {
        return MultivectorField(X, {{0, 2}, {1}});
    }));
    out.push_back(example("hollow triangle/singletons", hollow_triangle(), singletons));
    out.push_back(example("full triangle/singletons", full_triangle(Field::prime(3)), singletons));
    out.push_back(example("sphere/singletons", sphere2(Field::prime(2)), singletons));
    out.push_back(example("square ring/singletons", square_ring(), singletons));
    int k = 0;
    for (auto& X : tiny_complexes())
        out.push_back(example("tiny " + std::to_string(k++), std::move(X), singletons));
    for (const char* f : {"-x1", "x1", "0.5 - x1"}) {
        const std::vector<double> lo{-1}, hi{1};
        const std::vector<std::size_t> cells{2};
        auto mesh = std::make_shared<GeometricComplex>(cubical_mesh(lo, hi, cells, Field::rationals()));
        const auto vf = parse_vf(f, 1);
        Example e;
        e.name = std::string("line f = ") + f;
        e.complex = std::shared_ptr<LefschetzComplex>(mesh, &mesh->complex);
        e.graph = std::make_shared<FlowGraph>(mvf_from_field(*mesh, vf));
        e.morse = finest_morse_decomposition(*e.graph);
        out.push_back(std::move(e));
    }
    return out;
}

bool cm_properties(const Example& e, std::string& why, bool with_oracle)
{
    const auto cm = connection_matrix(*e.graph, e.morse);
    const auto report = verify_connection_matrix(cm, *e.graph, e.morse);
    if (!report.ok() || (e.morse.size() <= 12 && !report.exhaustive)) {
        why = e.name + ": " + (report.failures.empty() ? "not exhaustive" : report.failures.front());
        return false;
    }
    if (!with_oracle)
        return true;
    // cross-check every interval against the dense quotient oracle as well
    const std::size_t n = e.morse.size();
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        const auto I = as_indices(mask, n);
        if (!e.morse.is_interval(I))
            continue;
        std::vector<unsigned> dims;
        const auto g = cm.generators_of(I);
        for (auto i : g)
            dims.push_back(cm.generators[i].dim);
        const auto algebraic = graded_homology(cm.delta.restrict(g, g), dims);
        if (!(algebraic == quotient_betti(*e.complex, morse_interval(*e.graph, e.morse, I)))) {
            why = e.name + ": interval mask " + std::to_string(mask) + " disagrees with the quotient oracle";
            return false;
        }
    }
    return true;
}

Outcome criterion_connection_matrix(const std::vector<Example>& bundled)
{
    std::size_t passed = 0, total = 0;
    std::string why;
    for (const auto& e : bundled) {
        ++total;
        passed += cm_properties(e, why, e.complex->size() <= 40);
    }
    std::mt19937_64 rng(4040);
    std::size_t random_ok = 0;
    for (int t = 0; t < 100; ++t) {
        const Field F = t % 3 == 0 ? Field::rationals() : (t % 3 == 1 ? Field::prime(2) : Field::prime(3));
        auto X = random_simplicial(rng, 6, F);
        const auto D = random_transitions(rng, X, 0.5, 0.4);
        const auto e = example("random " + std::to_string(t), std::move(X),
                               [&](const LefschetzComplex& Y) { return minimal_mvf(Y, D); });
        ++total;
        const bool ok = cm_properties(e, why, true);
        passed += ok;
        random_ok += ok;
    }
    std::ostringstream d;
    d << passed << "/" << total << " (bundled " << passed - random_ok << "/" << bundled.size() << ", random "
      << random_ok << "/100)";
    if (!why.empty())
        d << "; first failure: " << why;
    return {passed == total, d.str()};
}

// ------------------------------------------------------------------ 5

Outcome criterion_homology(const std::vector<const LefschetzComplex*>& extra)
{
    struct Case {
        std::string name;
        LefschetzComplex X;
        BettiVector want;
    };
    std::vector<Case> cases;
    for (Field F : {Field::rationals(), Field::prime(2), Field::prime(5)}) {
        cases.push_back({"full triangle", full_triangle(F), {1, 0, 0}});
        cases.push_back({"hollow triangle", hollow_triangle(F), {1, 1}});
        cases.push_back({"sphere", sphere2(F), {1, 0, 1}});
        cases.push_back({"cube", unit_cube(F), {1, 0, 0, 0}});
        cases.push_back({"square ring", square_ring(F), {1, 1}});
    }
    std::size_t ok = 0;
    std::string why;
    for (const auto& c : cases) {
        const auto b = betti(c.X);
        const auto oracle = quotient_betti(c.X, c.X.all_cells());
        if (b == c.want && oracle == c.want)
            ++ok;
        else if (why.empty())
            why = c.name + " over " + c.X.field().name() + " gave " + b.to_string();
    }
    auto euler = [](const LefschetzComplex& X) {
        long long chi = 0;
        for (int k = 0; k <= X.dimension(); ++k)
            chi += (k % 2 ? -1 : 1) * static_cast<long long>(X.count(static_cast<unsigned>(k)));
        return chi;
    };
    std::size_t ep_total = 0, ep_ok = 0;
    auto check_ep = [&](const LefschetzComplex& X) {
        ++ep_total;
        if (betti(X).euler_characteristic() == euler(X))
            ++ep_ok;
        else if (why.empty())
            why = "Euler-Poincare fails on a complex with " + std::to_string(X.size()) + " cells";
    };
    for (const auto& c : cases)
        check_ep(c.X);
    for (const auto& X : tiny_complexes())
        check_ep(X);
    for (const auto* X : extra)
        check_ep(*X);
    std::mt19937_64 rng(5050);
    for (int t = 0; t < 100; ++t) {
        const auto X = random_simplicial(rng, 7, t % 2 ? Field::rationals() : Field::prime(2));
        check_ep(X);
        if (!(betti(X) == quotient_betti(X, X.all_cells())) && why.empty())
            why = "random complex disagrees with the dense oracle";
    }
    std::ostringstream d;
    d << "Betti " << ok << "/" << cases.size() << ", Euler-Poincare " << ep_ok << "/" << ep_total;
    if (!why.empty())
        d << "; " << why;
    return {ok == cases.size() && ep_ok == ep_total && why.empty(), d.str()};
}

// ------------------------------------------------------------------ 6

Outcome criterion_minimal_mvf()
{
    std::size_t complexes = 0, collections = 0, ok = 0;
    std::string why;
    for (const auto& X : tiny_complexes()) {
        if (X.size() > 6)
            continue;
        ++complexes;
        const auto subsets = all_subsets(X);
        std::vector<std::vector<CellSet>> all{{}};
        for (std::size_t i = 1; i < subsets.size(); ++i) {
            all.push_back({subsets[i]});
            for (std::size_t j = i + 1; j < subsets.size(); ++j)
                all.push_back({subsets[i], subsets[j]});
        }
        for (const auto& D : all) {
            ++collections;
            const auto minimal = brute_force_minimal(X, D);
            const auto V = minimal_mvf(X, D);
            if (minimal.size() == 1 && V.multivectors() == minimal[0])
                ++ok;
            else if (why.empty())
                why = "mismatch on a complex with " + std::to_string(X.size()) + " cells";
        }
    }
    std::ostringstream d;
    d << ok << "/" << collections << " transition collections on " << complexes << " complexes";
    if (!why.empty())
        d << "; " << why;
    return {ok == collections && collections > 0, d.str()};
}

// ------------------------------------------------------------------ 7

Outcome criterion_duality(const std::vector<Example>& bundled)
{
    std::size_t down = 0, attractors = 0, up = 0, repellers = 0, repellers_within = 0;
    std::string first;
    for (const auto& e : bundled) {
        const std::size_t n = e.morse.size();
        if (n > 16)
            continue;
        const auto inv = invariant_part(*e.graph, e.morse);
        for (unsigned mask = 1; mask < (1u << n); ++mask) {
            const auto I = as_indices(mask, n);
            const bool d = e.morse.is_down_set(I), u = e.morse.is_up_set(I);
            if (!d && !u)
                continue;
            const auto S = morse_interval(*e.graph, e.morse, I);
            if (d) {
                ++down;
                attractors += is_attractor(*e.graph, S);
            }
            if (u) {
                ++up;
                const bool literal = is_repeller(*e.graph, S);
                repellers += literal;
                repellers_within += is_repeller_within(*e.graph, S, inv);
                if (!literal && first.empty())
                    first = e.name;
            }
        }
    }
    std::ostringstream d;
    d << "down sets: is_attractor " << attractors << "/" << down << "; up sets: is_repeller " << repellers << "/"
      << up;
    if (repellers != up)
        d << " (first failure: " << first << "; transient cells outside the invariant part map into the set; "
          << "repellers relative to the invariant part: " << repellers_within << "/" << up << ")";
    return {attractors == down && repellers == up, d.str()};
}

// ------------------------------------------------------------------ 8

std::string read_file(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

Outcome criterion_determinism(const std::string& exe)
{
    const auto root = fs::temp_directory_path() / ("cmvf_acceptance_" + std::to_string(::getpid()));
    fs::remove_all(root);
    const std::vector<std::pair<std::string, std::string>> commands{
        {"morse", "morse --system planar9"},
        {"interval", "interval --system planar9 --indices 0,1,2,3,4,5,6,7"},
        {"cm", "cm --system planar9"},
        {"plot_hasse", "plot --system planar9 --product hasse"},
        {"plot_interval", "plot --system planar9 --product interval --indices 0,1,2"},
        {"morse_ac", "morse --system allencahn3d"},
        {"cm_ac", "cm --system allencahn3d"},
        {"morse_q", "morse --system planar9 --field Q --mesh delaunay:1500 --seed 7"},
    };
    std::size_t files = 0, identical = 0, runs_ok = 0;
    std::string why;
    for (const auto& [tag, args] : commands) {
        std::vector<fs::path> dirs;
        // two default runs plus one forced-serial run
        for (const std::string variant : {"a", "b", "serial"}) {
            const auto dir = root / tag / variant;
            dirs.push_back(dir);
            const std::string cmd = "\"" + exe + "\" " + args + " --out \"" + dir.string() + "\"" +
                                    (variant == "serial" ? " --serial" : "") + " > /dev/null";
            if (std::system(cmd.c_str()) == 0)
                ++runs_ok;
            else if (why.empty())
                why = "command failed: " + args;
        }
        if (!fs::exists(dirs[0]))
            continue;
        for (const auto& entry : fs::directory_iterator(dirs[0])) {
            const auto name = entry.path().filename();
            const auto ref = read_file(entry.path());
            ++files;
            bool same = true;
            for (std::size_t k = 1; k < dirs.size(); ++k)
                same = same && fs::exists(dirs[k] / name) && read_file(dirs[k] / name) == ref;
            identical += same;
            if (!same && why.empty())
                why = tag + "/" + name.string() + " differs between runs";
        }
    }
    fs::remove_all(root);
    std::ostringstream d;
    d << identical << "/" << files << " output files byte-identical across 3 runs (2 default, 1 serial) of "
      << commands.size() << " commands";
    if (!why.empty())
        d << "; " << why;
    return {identical == files && files > 0 && runs_ok == 3 * commands.size(), d.str()};
}

} // namespace

int main(int argc, char** argv)
{
    if (argc < 2) {
        std::cerr << "usage: cmvf_acceptance <path to cmvf>\n";
        return 2;
    }
    bool all = true;
    auto report = [&all](int k, const std::string& name, const Outcome& o) {
        std::cout << (o.pass ? "PASS" : "FAIL") << " " << k << " " << name << ": " << o.detail << std::endl;
        all = all && o.pass;
    };
    auto guarded = [](auto&& f) -> Outcome {
        try {
            return f();
        } catch (const std::exception& e) {
            return {false, std::string("exception: ") + e.what()};
        }
    };

    auto t0 = Clock::now();
    const auto planar = analyze(builtin_system("planar9"));
    const double planar_time = seconds_since(t0);
    t0 = Clock::now();
    const auto ac = analyze(builtin_system("allencahn3d"));
    const double ac_time = seconds_since(t0);

    auto bundled = fixture_examples();
    bundled.push_back(from_analysis("planar9", planar));
    bundled.push_back(from_analysis("allencahn3d", ac));

    report(1, "planar9 Morse decomposition", guarded([&] { return criterion_planar(planar, planar_time); }));
    report(2, "planar9 stable and index-1 interval", guarded([&] { return criterion_planar_interval(planar); }));
    report(3, "allencahn3d Morse decomposition", guarded([&] { return criterion_allencahn(ac, ac_time); }));
    report(4, "connection matrix properties", guarded([&] { return criterion_connection_matrix(bundled); }));
    report(5, "homology oracles", guarded([&] {
               return criterion_homology({&planar.complex(), &ac.complex()});
           }));
    report(6, "minimal multivector field", guarded([&] { return criterion_minimal_mvf(); }));
    report(7, "down-set/up-set duality", guarded([&] { return criterion_duality(bundled); }));
    report(8, "CLI determinism", guarded([&] { return criterion_determinism(argv[1]); }));
    return all ? 0 : 1;
}
