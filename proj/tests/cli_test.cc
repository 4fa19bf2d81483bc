#include <doctest.h>

#include "fixtures.hh"

#include <decgraph/cli.hh>
#include <decgraph/io.hh>

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

namespace fs = std::filesystem;

using namespace decgraph;
using namespace decgraph::testing;

namespace
{
    struct Run
    {
        int code;
        std::string out;
        std::string err;
    };

    auto run(std::vector<std::string> args) -> Run
    {
        args.insert(args.begin(), "decgraph");
        std::ostringstream out, err;
        int code = run_cli(args, out, err);
        return { code, out.str(), err.str() };
    }

    class TempDir
    {
    public:
        TempDir()
        {
            std::random_device rd;
            _path = fs::temp_directory_path() / ("decgraph_cli_" + std::to_string(rd()) + std::to_string(rd()));
            fs::create_directories(_path);
        }

        ~TempDir() { fs::remove_all(_path); }

        auto operator/(const std::string & name) const -> std::string { return (_path / name).string(); }

    private:
        fs::path _path;
    };

    auto slurp(const std::string & path) -> std::string
    {
        std::ifstream in{path, std::ios::binary};
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    auto contains(const std::string & text, const std::string & needle) -> bool
    {
        return text.find(needle) != std::string::npos;
    }
}

TEST_CASE("sanitize_filename")
{
    CHECK(sanitize_filename("sigma_1-x") == "sigma_1-x");
    CHECK(sanitize_filename("γ") == "~CE~B3");
    CHECK(sanitize_filename("a/b") == "a~2Fb");
    CHECK(sanitize_filename("~") == "~7E");
}

TEST_CASE("validate")
{
    TempDir dir;
    auto good = dir / "ex1.json";
    write_json_file(good, problem_to_json(example_one()));
    CHECK(run({ "validate", good }).code == 0);

    auto bad = example_one();
    bad.target_behaviour.insert(make_str({"a", "a"}));
    write_json_file(dir / "bad.json", problem_to_json(bad));
    auto r = run({ "validate", dir / "bad.json" });
    CHECK(r.code == 2);
    CHECK(contains(r.out, "K ⊄ L"));

    write_text_file(dir / "broken.json", "{ \"type\": ");
    CHECK(run({ "validate", dir / "broken.json" }).code == 2);
    CHECK(run({ "validate", dir / "missing.json" }).code == 2);

    write_json_file(dir / "control.json", problem_to_json(gamma_control()));
    CHECK(run({ "validate", dir / "control.json" }).code == 0);
}

TEST_CASE("reduce")
{
    TempDir dir;
    write_json_file(dir / "control.json", problem_to_json(gamma_control()));

    SUBCASE("one file per controllable event")
    {
        auto r = run({ "reduce", dir / "control.json", "-o", dir / "out" });
        CHECK(r.code == 0);
        auto p = observation_problem_from_json(read_json_file(dir / "out/obs_~CE~B3.json"));
        CHECK(p.legal_behaviour.same_set(Language{ make_str({"a"}), make_str({"b"}) }));
        CHECK(p.target_behaviour.same_set(Language{ make_str({"a"}) }));
        auto manifest = read_json_file(dir / "out/manifest.json");
        CHECK(manifest[0]["event"] == "γ");
        CHECK(manifest[0]["file"] == "obs_~CE~B3.json");
    }

    SUBCASE("no controllable events")
    {
        auto c = gamma_control();
        c.controllable = { {}, {} };
        c.target_behaviour = c.legal_behaviour;
        write_json_file(dir / "none.json", problem_to_json(c));
        CHECK(run({ "reduce", dir / "none.json", "-o", dir / "none" }).code == 0);
        int files = 0;
        for (auto & e : fs::directory_iterator(dir / "none"))
            files += e.path().filename().string().starts_with("obs_");
        CHECK(files == 0);
    }

    SUBCASE("uncontrollable")
    {
        auto c = gamma_control();
        c.target_behaviour = Language{ Str{}, make_str({"b"}) };
        write_json_file(dir / "unc.json", problem_to_json(c));
        CHECK(run({ "reduce", dir / "unc.json", "-o", dir / "unc" }).code == 1);
        CHECK(run({ "reduce", dir / "unc.json", "-o", dir / "unc", "--allow-uncontrollable" }).code == 0);
    }
}

TEST_CASE("check and solve")
{
    TempDir dir;
    write_json_file(dir / "ex1.json", problem_to_json(example_one()));

    SUBCASE("solvable with a verified witness")
    {
        auto r = run({ "check", dir / "ex1.json", "--rule", "conjunctive:2", "--witness", dir / "w.json" });
        CHECK(r.code == 0);
        CHECK(r.out == "SOLVABLE\n");
        auto v = run({ "verify-solution", dir / "ex1.json", "--rule", "conjunctive:2", "--morphism", dir / "w.json" });
        CHECK(v.code == 0);
        CHECK(v.out == "VALID\n");
    }

    SUBCASE("solve writes a solution that re-verifies")
    {
        CHECK(run({ "solve", dir / "ex1.json", "--rule", "conjunctive:2", "-o", dir / "sol.json" }).code == 0);
        CHECK(run({ "verify-solution", dir / "ex1.json", "--rule", "conjunctive:2", "--solution", dir / "sol.json" }).code == 0);

        auto j = read_json_file(dir / "sol.json");
        for (auto & entry : j[0])
            entry[1] = "1";
        for (auto & entry : j[1])
            entry[1] = "1";
        write_json_file(dir / "tampered.json", j);
        auto v = run({ "verify-solution", dir / "ex1.json", "--rule", "conjunctive:2", "--solution", dir / "tampered.json" });
        CHECK(v.code == 1);
        CHECK(v.out == "INVALID\n");
    }

    SUBCASE("tampered witness")
    {
        run({ "check", dir / "ex1.json", "--rule", "conjunctive:2", "--witness", dir / "w.json" });
        auto j = read_json_file(dir / "w.json");
        for (auto & pair : j)
            pair[1] = Json::parse(R"(["0","0"])");
        write_json_file(dir / "w.json", j);
        auto v = run({ "verify-solution", dir / "ex1.json", "--rule", "conjunctive:2", "--morphism", dir / "w.json" });
        CHECK(v.code == 1);
        CHECK(contains(v.out, "colour violation at b"));
    }

    SUBCASE("colour conflict in an indistinguishable class")
    {
        write_json_file(dir / "pair.json", problem_to_json(indistinguishable_pair(false)));
        for (auto & name : builtin_rule_names()) {
            auto r = run({ "check", dir / "pair.json", "--rule", name + ":2" });
            CHECK(r.code == 1);
            CHECK(r.out.starts_with("UNSOLVABLE\n"));
        }
    }

    SUBCASE("constant-0 rule cannot accept b")
    {
        CHECK(run({ "check", dir / "ex1.json", "--rule", "const0:2" }).code == 1);
    }

    SUBCASE("arity mismatch and bad rule")
    {
        CHECK(run({ "check", dir / "ex1.json", "--rule", "conjunctive:3" }).code == 2);
        CHECK(run({ "check", dir / "ex1.json", "--rule", "majority:2" }).code == 2);
        CHECK(run({ "solve", dir / "ex1.json", "--rule", "conjunctive:2" }).code == 2);
    }

    SUBCASE("budget exceeded")
    {
        CHECK(run({ "check", dir / "ex1.json", "--rule", "conjunctive:2", "--budget", "1" }).code == 3);
    }

    SUBCASE("rule file")
    {
        write_json_file(dir / "conj.json", rule_to_json(builtin_rule("conjunctive", 2)));
        CHECK(run({ "check", dir / "ex1.json", "--rule", dir / "conj.json" }).code == 0);
    }
}

TEST_CASE("compare")
{
    TempDir dir;

    SUBCASE("incomparable")
    {
        auto r = run({ "compare", "conjunctive:2", "disjunctive:2", "--separating", dir / "sep" });
        CHECK(r.code == 0);
        CHECK(r.out.starts_with("conjunctive:2 vs disjunctive:2: incomparable\n"));

        CHECK(run({ "check", dir / "sep/separating_first.json", "--rule", "conjunctive:2" }).code == 0);
        CHECK(run({ "check", dir / "sep/separating_first.json", "--rule", "disjunctive:2" }).code == 1);
        CHECK(run({ "check", dir / "sep/separating_second.json", "--rule", "disjunctive:2" }).code == 0);
        CHECK(run({ "check", dir / "sep/separating_second.json", "--rule", "conjunctive:2" }).code == 1);
    }

    SUBCASE("strictly more permissive with a witness")
    {
        auto r = run({ "compare", "cpda:2", "conjunctive:2", "--witness", dir / "w" });
        CHECK(r.code == 0);
        CHECK(contains(r.out, "second strictly more permissive"));
        CHECK(fs::exists(dir / "w.forward.json"));
        CHECK_FALSE(fs::exists(dir / "w.backward.json"));
        CHECK(run({ "verify-solution", "cpda:2", "--rule", "conjunctive:2", "--morphism", dir / "w.forward.json" }).code == 0);
    }

    SUBCASE("equivalent to itself")
    {
        CHECK(contains(run({ "compare", "cpda:2", "cpda:2" }).out, ": equivalent\n"));
    }

    SUBCASE("arity mismatch")
    {
        CHECK(run({ "compare", "cpda:2", "cpda:3" }).code == 2);
    }

    SUBCASE("byte-identical output files")
    {
        run({ "compare", "conjunctive_cd:2", "conjunctive:2", "-o", dir / "a.json" });
        run({ "compare", "conjunctive_cd:2", "conjunctive:2", "-o", dir / "b.json" });
        CHECK(slurp(dir / "a.json") == slurp(dir / "b.json"));
        CHECK(read_json_file(dir / "a.json")["relation"] == "equivalent");
    }
}

TEST_CASE("poset")
{
    TempDir dir;
    auto r = run({ "poset", "conjunctive:2", "disjunctive:2", "cpda:2", "-o", dir / "poset.json" });
    CHECK(r.code == 0);
    CHECK(contains(r.out, "hasse: cpda:2 < conjunctive:2\n"));
    CHECK(contains(r.out, "hasse: cpda:2 < disjunctive:2\n"));
    auto j = read_json_file(dir / "poset.json");
    CHECK(j["matrix"][0][1] == "incomparable");
    CHECK(run({ "poset", "cpda:2", "cpda:3" }).code == 2);
}

TEST_CASE("d2o")
{
    TempDir dir;

    SUBCASE("conjunctive unary")
    {
        CHECK(run({ "d2o", "conjunctive:2", "--encoding", "unary", "-o", dir / "d" }).code == 0);
        auto p = observation_problem_from_json(read_json_file(dir / "d/problem.json"));
        CHECK(p.legal_behaviour.same_set(Language{ make_str({"1_1", "1_2"}), make_str({"0_1", "1_1", "1_2"}),
                        make_str({"1_1", "0_2", "1_2"}), make_str({"0_1", "1_1", "0_2", "1_2"}) }));
        CHECK(p.target_behaviour.same_set(Language{ make_str({"0_1", "1_1", "0_2", "1_2"}) }));
        auto res = d2o_from_json(read_json_file(dir / "d/problem.json"), read_json_file(dir / "d/bijection.json"));
        CHECK(verify_d2o(res, builtin_rule("conjunctive", 2)));
    }

    SUBCASE("cpda tagged")
    {
        CHECK(run({ "d2o", "cpda:2", "--encoding", "tagged", "-o", dir / "t" }).code == 0);
        auto p = observation_problem_from_json(read_json_file(dir / "t/problem.json"));
        CHECK(p.legal_behaviour.size() == 6);
        CHECK(p.legal_behaviour.contains(make_str({"dk^1", "1^2"})));
        CHECK(p.target_behaviour.size() == 3);
    }

    SUBCASE("bad encoding")
    {
        CHECK(run({ "d2o", "cpda:2", "--encoding", "binary" }).code == 2);
    }
}

TEST_CASE("graph")
{
    TempDir dir;
    write_json_file(dir / "ex1.json", problem_to_json(example_one()));
    CHECK(run({ "graph", dir / "ex1.json", "--dot", dir / "ex1.dot" }).code == 0);
    auto dot = slurp(dir / "ex1.dot");
    int nodes = 0;
    for (auto pos = dot.find("peripheries=") ; pos != std::string::npos ; pos = dot.find("peripheries=", pos + 1))
        ++nodes;
    CHECK(nodes == 4);

    auto r = run({ "graph", "conjunctive:2" });
    CHECK(r.code == 0);
    CHECK(r.out.starts_with("graph "));
    CHECK(run({ "graph", dir / "nothing.json" }).code == 2);
}

TEST_CASE("usage errors")
{
    CHECK(run({}).code == 2);
    CHECK(run({ "frobnicate" }).code == 2);
    CHECK(run({ "--help" }).code == 0);
}

TEST_CASE("the installed binary propagates exit codes")
{
    TempDir dir;
    write_json_file(dir / "ex1.json", problem_to_json(example_one()));
    auto call = [&] (const std::string & args) {
        int status = std::system((std::string{DECGRAPH_CLI} + " " + args + " > " + (dir / "log") + " 2>&1").c_str());
        return WEXITSTATUS(status);
    };
    CHECK(call("check " + (dir / "ex1.json") + " --rule conjunctive:2") == 0);
    CHECK(call("check " + (dir / "ex1.json") + " --rule const0:2") == 1);
    CHECK(call("check " + (dir / "ex1.json") + " --rule conjunctive:3") == 2);
    CHECK(call("check " + (dir / "ex1.json") + " --rule conjunctive:2 --budget 1") == 3);
}
