// ck: command-line front end; all work happens behind the C API of the
// shared library.  Structured inputs are JSON files (or inline JSON), and
// every subcommand prints a JSON report on stdout.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "commutantkit/capi.h"

namespace {

using nlohmann::json;

json load_json_arg(const std::string& arg) {
    if (!arg.empty() && (arg.front() == '{' || arg.front() == '[' || arg.front() == '"'))
        return json::parse(arg);
    std::ifstream in(arg);
    if (!in) throw CLI::ValidationError("cannot open '" + arg + "'");
    json j;
    in >> j;
    return j;
}

// Group documents may be bare or wrapped as {"group": ...}.
json load_group(const std::string& arg) {
    json j = load_json_arg(arg);
    return j.contains("group") ? j.at("group") : j;
}

int run(const json& request, long seed) {
    json full = request;
    full["seed"] = seed;
    ck_context* ctx = ck_context_new();
    char* response = nullptr;
    int rc = ck_run(ctx, full.dump().c_str(), &response);
    if (rc == CK_OK || rc == CK_VERDICT_FAILED) {
        std::cout << response << "\n";
        ck_string_free(response);
    } else {
        std::cerr << "error: " << ck_last_error(ctx) << "\n";
        rc = 2;
    }
    ck_context_free(ctx);
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact operator-algebra toolkit: commutants, representations, "
                 "p-adic arithmetic, ultrametric norms"};
    app.require_subcommand(1);
    long seed = 0;
    app.add_option("--seed", seed, "Seed echoed into reports (pipelines are deterministic)")
        ->envname("COMMUTANTKIT_SEED");

    json request;

    // padic
    auto* padic = app.add_subcommand("padic", "Truncated p-adic expansions");
    padic->require_subcommand(1);
    unsigned long p = 5;
    std::size_t prec = 8;
    std::string value, a_str, b_str;
    for (const char* verb : {"expand", "inv"}) {
        auto* sub = padic->add_subcommand(verb, verb[0] == 'e' ? "Digit expansion of a rational"
                                                               : "Multiplicative inverse");
        sub->add_option("--p", p, "Prime")->required();
        sub->add_option("--n", prec, "Number of digits");
        sub->add_option("value", value, "Rational value, e.g. -1 or 1/3")->required();
        sub->callback([&, verb] {
            request = json{{"command", std::string("padic ") + verb},
                           {"args", {{"p", p}, {"precision", prec}, {"value", value}}}};
        });
    }
    for (const char* verb : {"add", "mul", "dist"}) {
        auto* sub = padic->add_subcommand(verb, verb[0] == 'd' ? "Ultrametric distance"
                                                               : "Exact arithmetic with carries");
        sub->add_option("--p", p, "Prime")->required();
        sub->add_option("--n", prec, "Number of digits");
        sub->add_option("a", a_str, "First rational")->required();
        sub->add_option("b", b_str, "Second rational")->required();
        sub->callback([&, verb] {
            request = json{{"command", std::string("padic ") + verb},
                           {"args", {{"p", p}, {"precision", prec}, {"a", a_str}, {"b", b_str}}}};
        });
    }

    // group
    auto* group = app.add_subcommand("group", "Finite groups as Cayley tables");
    group->require_subcommand(1);
    std::string file1, file2;
    {
        auto* sub = group->add_subcommand("make", "Verify and echo a group");
        sub->add_option("group", file1, "Group JSON (Cayley table or permutation generators)")
            ->required();
        sub->callback([&] {
            request = json{{"command", "group make"}, {"args", {{"group", load_group(file1)}}}};
        });
        auto* cls = group->add_subcommand("classes", "Conjugacy classes");
        cls->add_option("group", file1, "Group JSON")->required();
        cls->callback([&] {
            request = json{{"command", "group classes"}, {"args", {{"group", load_group(file1)}}}};
        });
        auto* prod = group->add_subcommand("product", "Direct product");
        prod->add_option("a", file1, "First group JSON")->required();
        prod->add_option("b", file2, "Second group JSON")->required();
        prod->callback([&] {
            request = json{{"command", "group product"},
                           {"args", {{"a", load_group(file1)}, {"b", load_group(file2)}}}};
        });
    }

    // rep
    auto* rep = app.add_subcommand("rep", "Finite group representations");
    rep->require_subcommand(1);
    std::string field = "Q", side = "left", aux;
    {
        auto* reg = rep->add_subcommand("regular", "Left/right regular representation");
        reg->add_option("group", file1, "Group JSON")->required();
        reg->add_option("--side", side, "left or right");
        reg->add_option("--field", field, "Field tag: Q, Qi, Fp:<p>");
        reg->callback([&] {
            request = json{{"command", "rep regular"},
                           {"args",
                            {{"group", load_group(file1)}, {"side", side}, {"field", field}}}};
        });
        auto* perm = rep->add_subcommand("perm", "Permutation representation from generators");
        perm->add_option("generators", file1, "JSON with permutation_generators")->required();
        perm->add_option("--field", field, "Field tag");
        perm->callback([&] {
            json doc = load_json_arg(file1);
            json args = {{"field", field}};
            args["permutation_generators"] =
                doc.contains("permutation_generators") ? doc.at("permutation_generators") : doc;
            request = json{{"command", "rep perm"}, {"args", std::move(args)}};
        });
        auto* dec = rep->add_subcommand("decompose", "Split into irreducible pieces");
        dec->add_option("representation", file1, "Representation JSON")->required();
        dec->callback([&] {
            request = json{{"command", "rep decompose"},
                           {"args", {{"representation", load_json_arg(file1)}}}};
        });
        auto* mas = rep->add_subcommand("maschke", "Invariant complement by averaging");
        mas->add_option("representation", file1, "Representation JSON")->required();
        mas->add_option("--subspace", aux, "Invariant subspace basis (JSON rows)")->required();
        mas->callback([&] {
            request = json{{"command", "rep maschke"},
                           {"args",
                            {{"representation", load_json_arg(file1)},
                             {"subspace", load_json_arg(aux)}}}};
        });
        auto* inter = rep->add_subcommand("intertwine", "Intertwiner space and isomorphism test");
        inter->add_option("rep1", file1, "First representation JSON")->required();
        inter->add_option("rep2", file2, "Second representation JSON")->required();
        inter->callback([&] {
            request = json{{"command", "rep intertwine"},
                           {"args",
                            {{"representation", load_json_arg(file1)},
                             {"representation2", load_json_arg(file2)}}}};
        });
        auto* emb = rep->add_subcommand("embed-regular", "Embed into the regular representation");
        emb->add_option("representation", file1, "Representation JSON")->required();
        emb->add_option("--functional", aux, "Nonzero functional (JSON vector)")->required();
        emb->callback([&] {
            request = json{{"command", "rep embed-regular"},
                           {"args",
                            {{"representation", load_json_arg(file1)},
                             {"functional", load_json_arg(aux)}}}};
        });
        auto* quot = rep->add_subcommand("quotient", "Quotient by an invariant subspace");
        quot->add_option("representation", file1, "Representation JSON")->required();
        quot->add_option("--subspace", aux, "Invariant subspace basis (JSON rows)")->required();
        quot->callback([&] {
            request = json{{"command", "rep quotient"},
                           {"args",
                            {{"representation", load_json_arg(file1)},
                             {"subspace", load_json_arg(aux)}}}};
        });
    }

    // algebra
    auto* algebra = app.add_subcommand("algebra", "Operator algebras and commutants");
    algebra->require_subcommand(1);
    std::size_t copies = 2;
    {
        for (const char* verb : {"generate", "commutant", "double-commutant", "center",
                                 "division", "bimodule", "dual-extension"}) {
            auto* sub = algebra->add_subcommand(verb, "");
            sub->add_option("algebra", file1, "Algebra JSON {field, n, basis}")->required();
            sub->callback([&, verb] {
                request = json{{"command", std::string("algebra ") + verb},
                               {"args", {{"algebra", load_json_arg(file1)}}}};
            });
        }
        auto* exp = algebra->add_subcommand("expand", "n-fold diagonal expansion check");
        exp->add_option("algebra", file1, "Algebra JSON")->required();
        exp->add_option("--copies", copies, "Number of diagonal copies");
        exp->callback([&] {
            request = json{{"command", "algebra expand"},
                           {"args", {{"algebra", load_json_arg(file1)}, {"copies", copies}}}};
        });
        auto* comb = algebra->add_subcommand("combined", "Hom-space combined algebra");
        comb->add_option("a", file1, "First algebra JSON")->required();
        comb->add_option("b", file2, "Second algebra JSON")->required();
        comb->callback([&] {
            request = json{{"command", "algebra combined"},
                           {"args",
                            {{"algebra", load_json_arg(file1)},
                             {"algebra2", load_json_arg(file2)}}}};
        });
        auto* flag = algebra->add_subcommand("flag", "Flag algebra of a strict chain");
        flag->add_option("chain", file1, "JSON {field, n, chain}")->required();
        flag->callback([&] {
            json doc = load_json_arg(file1);
            request = json{{"command", "algebra flag"}, {"args", std::move(doc)}};
        });
    }

    // norm
    auto* norm = app.add_subcommand("norm", "Ultrametric norms in functional-max form");
    norm->require_subcommand(1);
    std::string mat, vec, target, subspace, mapfile, bound = "1";
    {
        auto* ev = norm->add_subcommand("eval", "Evaluate N(v)");
        ev->add_option("spec", file1, "Norm spec JSON")->required();
        ev->add_option("--vector", vec, "Vector (JSON array of rationals)")->required();
        ev->callback([&] {
            request = json{{"command", "norm eval"},
                           {"args", {{"spec", load_json_arg(file1)}, {"vector", load_json_arg(vec)}}}};
        });
        auto* opn = norm->add_subcommand("opnorm", "Exact operator norm with witness");
        opn->add_option("spec", file1, "Domain norm spec JSON")->required();
        opn->add_option("--matrix", mat, "Operator (JSON matrix)")->required();
        opn->add_option("--target", target, "Target norm spec JSON (defaults to domain)");
        opn->callback([&] {
            json args = {{"spec", load_json_arg(file1)}, {"matrix", load_json_arg(mat)}};
            if (!target.empty()) args["target"] = load_json_arg(target);
            request = json{{"command", "norm opnorm"}, {"args", std::move(args)}};
        });
        auto* iso = norm->add_subcommand("isometry", "Isometry verdict for an operator");
        iso->add_option("spec", file1, "Norm spec JSON")->required();
        iso->add_option("--matrix", mat, "Operator (JSON matrix)")->required();
        iso->callback([&] {
            request = json{{"command", "norm isometry"},
                           {"args", {{"spec", load_json_arg(file1)}, {"matrix", load_json_arg(mat)}}}};
        });
        auto* inv = norm->add_subcommand("invariant", "Group-invariant norm from a seed");
        inv->add_option("representation", file1, "Representation JSON over Q")->required();
        inv->add_option("--seed-spec", aux, "Seed norm spec JSON")->required();
        inv->callback([&] {
            request = json{{"command", "norm invariant"},
                           {"args",
                            {{"representation", load_json_arg(file1)}, {"seed", load_json_arg(aux)}}}};
        });
        auto* nor = norm->add_subcommand("normalize", "Normalized basis with dual functionals");
        nor->add_option("spec", file1, "Norm spec JSON")->required();
        nor->callback([&] {
            request =
                json{{"command", "norm normalize"}, {"args", {{"spec", load_json_arg(file1)}}}};
        });
        auto* ext = norm->add_subcommand("extend", "Extend a bounded map from a subspace");
        ext->add_option("spec", file1, "Domain norm spec JSON")->required();
        ext->add_option("--subspace", subspace, "Subspace basis (JSON rows)")->required();
        ext->add_option("--map", mapfile, "Images of the basis, one column each (JSON matrix)")
            ->required();
        ext->add_option("--bound", bound, "Rational bound, default 1");
        ext->add_option("--target", target, "Target norm spec JSON (defaults to domain)");
        ext->callback([&] {
            json args = {{"spec", load_json_arg(file1)},
                         {"subspace", load_json_arg(subspace)},
                         {"map", load_json_arg(mapfile)},
                         {"bound", bound}};
            if (!target.empty()) args["target"] = load_json_arg(target);
            request = json{{"command", "norm extend"}, {"args", std::move(args)}};
        });
    }

    // fixtures
    auto* fixtures = app.add_subcommand("fixtures", "Canonical example inputs");
    std::string dir = ".";
    {
        auto* emit = fixtures->add_subcommand("emit", "Write the fixture files");
        emit->add_option("--dir", dir, "Output directory");
        emit->callback([&] {
            request = json{{"command", "fixtures emit"}, {"args", {{"dir", dir}}}};
        });
    }
    fixtures->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: invalid JSON input: " << e.what() << "\n";
        return 2;
    }
    try {
        return run(request, seed);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
