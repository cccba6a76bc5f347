#include "loopmod/json_io.hpp"

#include "loopmod/errors.hpp"

#include <cstdio>

namespace loopmod {

namespace {

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) fail(ErrorKind::Input, std::string("missing field '") + key + "'");
    return j.at(key);
}

long as_long(const json& j, const char* what) {
    if (!j.is_number_integer()) fail(ErrorKind::Input, std::string(what) + " must be an integer");
    return j.get<long>();
}

json integer_json(const Integer& z) {
    if (z.fits_slong_p()) return json(z.get_si());
    return json(z.get_str());
}

Integer integer_from_json(const json& j, const char* what) {
    if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()));
    if (j.is_string()) {
        Integer z;
        if (z.set_str(j.get<std::string>(), 10) != 0) fail(ErrorKind::Input, std::string("bad integer for ") + what);
        return z;
    }
    fail(ErrorKind::Input, std::string(what) + " must be an integer");
}

json int_vec(const IntVec& v) {
    json a = json::array();
    for (auto x : v) a.push_back(x);
    return a;
}

json weight_json(const Weight& w) {
    json a = json::array();
    for (auto x : w) a.push_back(x);
    return a;
}

json index_json(const Index& I) {
    json a = json::array();
    for (int x : I) a.push_back(x + 1);
    return a;
}

json classes_json(const std::vector<WeightClass>& classes) {
    json a = json::array();
    for (const auto& c : classes) a.push_back({{"coords", weight_json(c.weight)}, {"count", c.count}, {"copies", c.copies}});
    return a;
}

json witness_json(const IsoWitness& w) {
    json taus = json::array(), scales = json::array();
    for (const auto& t : w.tau) {
        json a = json::array();
        for (int x : t) a.push_back(x + 1);
        taus.push_back(a);
    }
    for (const auto& s : w.scale) scales.push_back(to_json(s));
    return {{"tau", taus}, {"scale", scales}, {"shift", int_vec(w.shift)}};
}

template <class F>
auto guarded(F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const json::exception& e) {
        fail(ErrorKind::Input, std::string("malformed JSON: ") + e.what());
    }
}

} // namespace

json rational_json(const Rational& q) {
    if (q.get_den() == 1) return integer_json(q.get_num());
    return json(q.get_str());
}

Rational rational_from_json(const json& j) {
    if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
    if (j.is_string()) return parse_rational(j.get<std::string>());
    fail(ErrorKind::Input, "rational must be an integer or a \"p/q\" string");
}

json to_json(const CycScalar& s) {
    return {{"num", integer_json(s.coeff().get_num())},
            {"den", integer_json(s.coeff().get_den())},
            {"zeta_pow", s.exponent()},
            {"zeta_order", s.order()}};
}

CycScalar cyc_from_json(const json& j) {
    return guarded([&] {
        Integer num = integer_from_json(field(j, "num"), "num");
        Integer den = j.contains("den") ? integer_from_json(j.at("den"), "den") : Integer(1);
        if (den == 0) fail(ErrorKind::Input, "zero denominator");
        long e = j.contains("zeta_pow") ? as_long(j.at("zeta_pow"), "zeta_pow") : 0;
        long L = j.contains("zeta_order") ? as_long(j.at("zeta_order"), "zeta_order") : 1;
        if (L < 1) fail(ErrorKind::Input, "zeta_order must be positive");
        if (num == 0) fail(ErrorKind::Input, "evaluation points must be nonzero");
        Rational q(num, den);
        q.canonicalize();
        return CycScalar(q, e, L);
    });
}

json to_json(const CycNumber& x) {
    json c = json::array();
    for (const auto& q : x.coeffs()) c.push_back(rational_json(q));
    return {{"zeta_order", x.order()}, {"coeffs", c}};
}

json to_json(const Lattice& L) {
    json basis = json::array();
    for (const auto& r : L.basis()) basis.push_back(int_vec(r));
    json ord = json::array();
    for (int o : L.ordering()) ord.push_back(o + 1);
    return {{"n", L.dim()}, {"basis", basis}, {"ordering", ord}};
}

Lattice lattice_from_json(const json& j) {
    return guarded([&] {
        int n = static_cast<int>(as_long(field(j, "n"), "n"));
        std::vector<IntVec> gens;
        for (const auto& r : field(j, "basis")) {
            IntVec v;
            for (const auto& x : r) v.push_back(as_long(x, "basis entry"));
            if (static_cast<int>(v.size()) != n) fail(ErrorKind::Input, "basis row has wrong length");
            gens.push_back(v);
        }
        std::vector<int> ord;
        if (j.contains("ordering"))
            for (const auto& x : j.at("ordering")) ord.push_back(static_cast<int>(as_long(x, "ordering")) - 1);
        return Lattice::from_generators(n, gens, ord);
    });
}

PsiSpec spec_from_json(const json& j) {
    return guarded([&] {
        PsiSpec s;
        const json& alg = field(j, "algebra");
        std::string series = field(alg, "series").get<std::string>();
        if (series.size() != 1) fail(ErrorKind::Input, "series must be one letter");
        s.algebra = build_algebra(series[0], static_cast<int>(as_long(field(alg, "rank"), "rank")));
        s.n = static_cast<int>(as_long(field(j, "n"), "n"));
        for (const auto& d : field(j, "dims")) s.dims.push_back(static_cast<int>(as_long(d, "dims entry")));
        if (static_cast<int>(s.dims.size()) != s.n) fail(ErrorKind::Input, "dims length differs from n");
        for (int d : s.dims)
            if (d < 1) fail(ErrorKind::Input, "dims entries must be positive");
        for (const auto& axis : field(j, "evals")) {
            std::vector<CycScalar> vals;
            for (const auto& v : axis) vals.push_back(cyc_from_json(v));
            s.evals.push_back(vals);
        }
        long total = grid_size(s.dims);
        std::vector<bool> seen(total, false);
        s.weights.assign(total, Weight{});
        for (const auto& entry : field(j, "weights")) {
            Index I;
            for (const auto& x : field(entry, "index")) I.push_back(static_cast<int>(as_long(x, "index entry")) - 1);
            if (static_cast<int>(I.size()) != s.n) fail(ErrorKind::Input, "weight index has wrong length");
            for (int i = 0; i < s.n; ++i)
                if (I[i] < 0 || I[i] >= s.dims[i]) fail(ErrorKind::Input, "weight index out of range");
            size_t k = s.flat(I);
            if (seen[k]) fail(ErrorKind::Input, "weight index listed twice");
            seen[k] = true;
            for (const auto& x : field(entry, "coords")) s.weights[k].push_back(as_long(x, "weight coordinate"));
        }
        for (long k = 0; k < total; ++k)
            if (!seen[k]) {
                std::string idx;
                for (int x : s.unflat(k)) idx += (idx.empty() ? "" : ",") + std::to_string(x + 1);
                fail(ErrorKind::Input, "missing weight for index (" + idx + ")");
            }
        if (j.contains("rho"))
            for (const auto& x : j.at("rho")) s.rho.push_back(rational_from_json(x));
        normalize_spec(s);
        return s;
    });
}

json to_json(const PsiSpec& s) {
    json evals = json::array();
    for (const auto& axis : s.evals) {
        json a = json::array();
        for (const auto& v : axis) a.push_back(to_json(v));
        evals.push_back(a);
    }
    json weights = json::array();
    for (size_t k = 0; k < s.slot_count(); ++k)
        weights.push_back({{"index", index_json(s.unflat(k))}, {"coords", weight_json(s.weights[k])}});
    json rho = json::array();
    for (const auto& q : s.rho) rho.push_back(rational_json(q));
    json dims = json::array();
    for (int d : s.dims) dims.push_back(d);
    return {{"algebra", {{"series", std::string(1, s.algebra.series)}, {"rank", s.algebra.rank}}},
            {"n", s.n},
            {"dims", dims},
            {"weights", weights},
            {"evals", evals},
            {"rho", rho}};
}

bool has_automorphism(const json& j) { return j.is_object() && j.contains("aut"); }

TwistedSpec twisted_from_json(const json& j) {
    return guarded([&] {
        TwistedSpec ts;
        ts.base = spec_from_json(j);
        const json& aut = field(j, "aut");
        for (const auto& x : field(aut, "perm")) ts.aut.perm.push_back(static_cast<int>(as_long(x, "perm entry")) - 1);
        ts.aut.order = static_cast<int>(as_long(field(aut, "order"), "order"));
        normalize_twisted(ts);
        return ts;
    });
}

json to_json(const TwistedSpec& ts) {
    json j = to_json(ts.base);
    json perm = json::array();
    for (int p : ts.aut.perm) perm.push_back(p + 1);
    j["aut"] = {{"perm", perm}, {"order", ts.aut.order}};
    return j;
}

json to_json(const ModuleDescriptor& d) {
    json factors = json::array();
    for (const auto& c : d.classes)
        for (long t = 0; t < c.copies; ++t) factors.push_back(weight_json(c.weight));
    return {{"gamma", to_json(d.gamma)},
            {"periods", int_vec(d.periods)},
            {"exponent", d.exponent},
            {"classes", classes_json(d.classes)},
            {"realization", {{"exponent", d.exponent}, {"factors", factors}}}};
}

json to_json(const std::vector<AxisBlocks>& blocks) {
    json a = json::array();
    for (size_t i = 0; i < blocks.size(); ++i) {
        const auto& b = blocks[i];
        json bases = json::array(), assign = json::array();
        for (const auto& c : b.bases) bases.push_back(to_json(c));
        for (size_t j = 0; j < b.block.size(); ++j)
            assign.push_back({{"point", j + 1}, {"block", b.block[j] + 1}, {"phase", b.phase[j]}});
        a.push_back({{"axis", i + 1}, {"period", b.period}, {"bases", bases}, {"assignment", assign}});
    }
    return a;
}

json to_json(const IsoResult& r) {
    json j = {{"isomorphic", r.isomorphic}};
    if (r.witness) j["witness"] = witness_json(*r.witness);
    if (!r.isomorphic) {
        j["status"] = "criteria-not-satisfied";
        j["failed_criterion"] = r.failed_criterion;
        j["reason"] = r.reason;
    }
    return j;
}

json to_json(const TwistedDescriptor& d) {
    return {{"type", twist_type_name(d.type)},
            {"gamma", to_json(d.gamma)},
            {"gamma_mu", to_json(d.gamma_mu)},
            {"gamma_rest", to_json(d.gamma_rest)},
            {"m_hat", d.m_hat},
            {"exponent", d.exponent},
            {"classes", classes_json(d.classes)}};
}

json to_json(const TwistedIsoResult& r) {
    json j = {{"isomorphic", r.isomorphic}};
    if (r.witness) {
        j["witness"] = witness_json(r.witness->base);
        json roots = json::array();
        for (long u : r.witness->roots) roots.push_back(u);
        j["witness"]["roots"] = roots;
    }
    if (!r.isomorphic) {
        j["status"] = "criteria-not-satisfied";
        j["failed_criterion"] = r.failed_criterion;
        j["reason"] = r.reason;
    }
    return j;
}

json to_json(const Reducibility& r) {
    json j = {{"reducible", r.reducible}};
    if (r.reducible) j["clause"] = r.clause;
    return j;
}

json to_json(const SupportCheck& c) {
    json zeros = json::array();
    for (const auto& z : c.exceptional_zeros) zeros.push_back(int_vec(z));
    json j = {{"ok", c.ok}, {"points", c.points}, {"nonzero", c.nonzero}, {"exceptional_zeros", zeros}};
    if (c.witness) {
        j["witness"] = int_vec(*c.witness);
        j["reason"] = c.reason;
    }
    return j;
}

json to_json(const GradedCharacter& ch) {
    json a = json::array();
    for (const auto& [m, ws] : ch) {
        json w = json::array();
        for (const auto& [wt, mult] : ws) w.push_back({{"weight", weight_json(wt)}, {"mult", mult}});
        a.push_back({{"degree", int_vec(m)}, {"weights", w}});
    }
    return a;
}

json to_json(const ComponentReport& r) {
    json starts = json::array();
    for (const auto& s : r.starts) starts.push_back(int_vec(s));
    json rows = json::array();
    for (const auto& row : r.rows) {
        json dims = json::array();
        for (long d : row.component_dims) dims.push_back(d);
        rows.push_back({{"degree", int_vec(row.degree)},
                        {"component_dims", dims},
                        {"total", row.total},
                        {"expected", row.expected},
                        {"top_weight_in_first", row.top_weight_in_first}});
    }
    return {{"count", r.count}, {"disjoint", r.disjoint}, {"exhaustive", r.exhaustive}, {"starts", starts}, {"degrees", rows}};
}

std::string input_digest(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace loopmod
