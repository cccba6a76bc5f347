#include "loopmod/errors.hpp"
#include "loopmod/json_io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace loopmod;

namespace {

struct Options {
    long box = 3;
    long cap = 64;
    long period = 0;
    std::string output = "json";
    std::vector<std::string> files;
};

struct Outcome {
    json result;
    json diagnostics = json::array();
    int code = 0;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::Input, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json parse(const std::string& text, const std::string& path) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        fail(ErrorKind::Input, path + ": " + e.what());
    }
}

int exit_code(ErrorKind k) {
    switch (k) {
    case ErrorKind::StructureViolation:
    case ErrorKind::TrivialModule:
    case ErrorKind::NoPeriodWithinBound:
    case ErrorKind::InfiniteIndex:
    case ErrorKind::SupportNotSubgroup:
    case ErrorKind::ImageMismatch:
        return 3;
    default:
        return 2;
    }
}

RealizerOptions realizer_options(const Options& o) {
    RealizerOptions r;
    r.radius = o.box;
    r.cap = o.cap;
    return r;
}

Outcome run_support(const json& in, const Options&) {
    PsiSpec s = spec_from_json(in);
    Lattice g = support_lattice(s);
    return {{{"gamma", to_json(g)}, {"periods", g.axis_periods()}, {"index", g.index()}}};
}

Outcome run_blocks(const json& in, const Options& o) {
    PsiSpec s = spec_from_json(in);
    Lattice g = support_lattice(s);
    std::vector<AxisBlocks> blocks;
    if (o.period > 0) {
        for (int i = 0; i < s.n; ++i) blocks.push_back(detect_axis_blocks(s.evals[i], o.period));
    } else {
        blocks = detect_blocks(s, g);
    }
    return {{{"gamma", to_json(g)}, {"axes", to_json(blocks)}}};
}

Outcome run_iso(const json& a, const json& b, const Options&) {
    IsoResult r = decide_iso(classify(spec_from_json(a)), classify(spec_from_json(b)));
    return {to_json(r), json::array(), r.isomorphic ? 0 : 1};
}

Outcome run_twisted_iso(const json& a, const json& b, const Options&) {
    TwistedIsoResult r =
        decide_twisted_iso(twisted_classify(twisted_from_json(a)), twisted_classify(twisted_from_json(b)));
    return {to_json(r), json::array(), r.isomorphic ? 0 : 1};
}

json fiber_table(const ComponentReport& rep) {
    json rows = json::array();
    for (const auto& row : rep.rows) {
        json dims = json::array();
        for (long d : row.component_dims) dims.push_back(d);
        rows.push_back({{"degree", row.degree}, {"component_dims", dims}, {"total", row.total}});
    }
    return rows;
}

Outcome run_verify_untwisted(const json& in, const Options& o) {
    ModuleDescriptor d = classify(spec_from_json(in));
    Outcome out;
    SupportCheck sc = verify_support(d.spec, d.gamma, o.box);
    ComponentReport rep = decompose(d.spec, d.gamma, realizer_options(o));
    bool top = true;
    for (const auto& row : rep.rows) top &= row.top_weight_in_first == d.gamma.contains(row.degree);
    json checks = {{"support", sc.ok},
                   {"component_count", rep.count == d.exponent},
                   {"disjoint", rep.disjoint},
                   {"exhaustive", rep.exhaustive},
                   {"top_weight_on_support", top}};
    bool ok = true;
    for (const auto& [k, v] : checks.items()) {
        if (v.get<bool>()) continue;
        ok = false;
        out.diagnostics.push_back({{"check", k}, {"status", "mismatch"}});
    }
    if (!sc.ok) out.diagnostics.push_back({{"check", "support"}, {"witness", *sc.witness}, {"reason", sc.reason}});
    out.result = {{"exponent", d.exponent},
                  {"components", rep.count},
                  {"checks", checks},
                  {"support_scan", to_json(sc)},
                  {"fibers", fiber_table(rep)},
                  {"passed", ok}};
    out.code = ok ? 0 : 1;
    return out;
}

Outcome run_verify_twisted(const json& in, const Options& o) {
    TwistedDescriptor d = twisted_classify(twisted_from_json(in));
    Outcome out;
    SupportCheck full = verify_support(d.spec.base, d.gamma, o.box);
    SupportCheck tw = verify_twisted_support(d.spec, d.gamma_mu, o.box);
    bool inside = true;
    for (const auto& row : d.gamma_mu.basis()) inside &= d.gamma.contains(row);
    json checks = {{"support", full.ok}, {"twisted_support", tw.ok}, {"twisted_inside_untwisted", inside}};
    bool realizable = d.spec.base.algebra.series == 'A' && d.spec.base.algebra.rank == 2 && d.spec.aut.order == 2;
    if (realizable) {
        TwistedDecomposition dec = twisted_decomposition(d.spec, d.gamma_mu, realizer_options(o));
        checks["twisted_components_contained"] = dec.contained;
        checks["twisted_components_disjoint"] = dec.disjoint;
    } else {
        out.diagnostics.push_back({{"note", "twisted closure is only run for A2 with k = 2"}});
    }
    bool ok = true;
    for (const auto& [k, v] : checks.items()) {
        if (v.get<bool>()) continue;
        ok = false;
        out.diagnostics.push_back({{"check", k}, {"status", "mismatch"}});
    }
    out.result = {{"type", twist_type_name(d.type)},
                  {"exponent", d.exponent},
                  {"m_hat", d.m_hat},
                  {"checks", checks},
                  {"passed", ok}};
    out.code = ok ? 0 : 1;
    return out;
}

void print_text(const json& report, std::ostream& os) {
    os << "command: " << report["command"].get<std::string>() << "\n";
    os << "input_digest: " << report["input_digest"].get<std::string>() << "\n";
    if (report["result"].is_object()) {
        for (const auto& [k, v] : report["result"].items()) os << k << ": " << v.dump() << "\n";
    }
    for (const auto& d : report["diagnostics"]) os << "diagnostic: " << d.dump() << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Classification and verification tools for graded loop-algebra modules"};
    Options opt;
    app.add_option("--box", opt.box, "Radius of the verification box")->check(CLI::NonNegativeNumber);
    app.add_option("--cap", opt.cap, "Dimension cap for explicit modules")->check(CLI::PositiveNumber);
    app.add_option("--output", opt.output, "Report format")->check(CLI::IsMember({"json", "text"}));
    app.require_subcommand(1);

    struct Cmd {
        const char* name;
        const char* help;
        int files;
    };
    const std::vector<Cmd> cmds = {
        {"support", "Support lattice, axis periods and index", 1},
        {"classify", "Block structure, index and weight classes", 1},
        {"blocks", "Per-axis root-of-unity blocks", 1},
        {"iso", "Decide isomorphism of two modules", 2},
        {"twisted-classify", "Type, twisted support and exponent", 1},
        {"twisted-iso", "Decide isomorphism of two twisted modules", 2},
        {"reducibility", "Complete reducibility under the twisted subalgebra", 1},
        {"verify", "Cross-check the classification against explicit closures", 1},
    };
    for (const auto& c : cmds) {
        CLI::App* sub = app.add_subcommand(c.name, c.help);
        sub->add_option("files", opt.files, "Input JSON")->required()->expected(c.files);
        if (std::string(c.name) == "blocks")
            sub->add_option("--period", opt.period, "Use this block size on every axis")->check(CLI::PositiveNumber);
    }
    CLI11_PARSE(app, argc, argv);
    std::string command = app.get_subcommands().front()->get_name();

    json report;
    report["schema"] = 1;
    report["command"] = command;
    report["input_digest"] = "";
    Outcome out;
    try {
        std::string bytes;
        std::vector<json> inputs;
        for (const auto& f : opt.files) {
            std::string text = slurp(f);
            bytes += text;
            inputs.push_back(parse(text, f));
        }
        report["input_digest"] = input_digest(bytes);
        if (command == "support") out = run_support(inputs[0], opt);
        else if (command == "classify") out = {to_json(classify(spec_from_json(inputs[0])))};
        else if (command == "blocks") out = run_blocks(inputs[0], opt);
        else if (command == "iso") out = run_iso(inputs[0], inputs[1], opt);
        else if (command == "twisted-classify") out = {to_json(twisted_classify(twisted_from_json(inputs[0])))};
        else if (command == "twisted-iso") out = run_twisted_iso(inputs[0], inputs[1], opt);
        else if (command == "reducibility") out = {to_json(check_complete_reducibility(twisted_from_json(inputs[0])))};
        else out = has_automorphism(inputs[0]) ? run_verify_twisted(inputs[0], opt) : run_verify_untwisted(inputs[0], opt);
    } catch (const Error& e) {
        out.result = nullptr;
        out.diagnostics.push_back({{"error", error_kind_name(e.kind())}, {"message", e.what()}});
        out.code = exit_code(e.kind());
    }
    report["result"] = out.result;
    report["diagnostics"] = out.diagnostics;
    if (opt.output == "json") std::cout << report.dump(2) << "\n";
    else print_text(report, std::cout);
    return out.code;
}
