#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "maclane/dynres.hpp"
#include "maclane/elliptic.hpp"
#include "maclane/errors.hpp"

using json = nlohmann::ordered_json;
using namespace maclane;

namespace {

// bad input rather than a failed computation
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string input_string(const json& in, const char* key) {
    if (in.is_string()) return in.get<std::string>();
    if (in.is_object() && in.contains(key)) {
        const json& v = in.at(key);
        return v.is_string() ? v.get<std::string>() : v.dump();
    }
    throw UsageError(std::string("missing input '") + key + "'");
}

std::string opt_string(const json& in, const char* key, const std::string& dflt) {
    if (!in.is_object() || !in.contains(key)) return dflt;
    const json& v = in.at(key);
    return v.is_string() ? v.get<std::string>() : v.dump();
}

json coeffs(const FieldPtr& F, const FPoly& f) {
    json out = json::array();
    for (const FE& c : f) out.push_back(F->str(c));
    return out;
}

json disk_json(const Diskoid& D) {
    return json{{"phi", coeffs(D.F, D.phi)}, {"s", D.s.str()}, {"r", D.r.str()}, {"disks", D.disks}};
}

json chain_json(const IndVal& V) {
    json st = json::array();
    int prev_f = 1;
    for (int i = 1; i <= V.size(); ++i) {
        const Stage& s = V.stage(i);
        int fk = s.k ? s.k->deg : 1;
        st.push_back({{"phi", coeffs(V.F, s.phi)},
                      {"poly", fpoly_str(V.F, s.phi)},
                      {"mu", s.mu.str()},
                      {"tau", s.tau},
                      {"f_rel", fk / prev_f}});
        prev_f = fk;
    }
    return st;
}

std::string chain_dot(const IndVal& V) {
    std::ostringstream os;
    os << "digraph approximants {\n  rankdir=LR;\n  node [shape=box];\n";
    os << "  v0 [label=\"v\"];\n";
    for (int i = 1; i <= V.size(); ++i) {
        const Stage& s = V.stage(i);
        os << "  v" << i << " [label=\"" << fpoly_str(V.F, s.phi) << "\\nmu = " << s.mu.str() << "\"];\n";
    }
    for (int i = 1; i <= V.size(); ++i) {
        std::string label;
        if (i == 1) {
            label = "phi = " + fpoly_str(V.F, V.stage(1).phi);
        } else {
            const Stage& a = V.stage(i - 1);
            const Stage& b = V.stage(i);
            int da = poly::deg<FRing>(a.phi), db = poly::deg<FRing>(b.phi);
            Val s = a.mu * mpq_class(db, da);
            label = "D(" + fpoly_str(V.F, a.phi) + ", " + s.str() + ")";
        }
        os << "  v" << i - 1 << " -> v" << i << " [label=\"" << label << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

std::vector<std::string> split_top(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

// "c_d, ..., c_0": coefficient of X^d first
FPoly form(const FieldPtr& F, const std::string& text) {
    std::string body = text;
    if (!body.empty() && body.front() == '[' && body.back() == ']') body = body.substr(1, body.size() - 2);
    FPoly out;
    for (auto& item : split_top(body)) out.push_back(F->from_k(parse_kelem(F->K(), item)));
    std::reverse(out.begin(), out.end());
    return out;
}

RatMap ratmap_input(const FieldPtr& F, const json& in) {
    FPoly f0 = form(F, input_string(in, "f0")), f1 = form(F, input_string(in, "f1"));
    int d = static_cast<int>(std::max(f0.size(), f1.size())) - 1;
    std::string ds = opt_string(in, "deg", "");
    if (!ds.empty()) d = std::stoi(ds);
    return normalize(F, f0, f1, d);
}

json ratmap_json(const RatMap& f) {
    FPoly a(f.F0.rbegin(), f.F0.rend()), b(f.F1.rbegin(), f.F1.rend());
    return json{{"deg", f.d}, {"f0", coeffs(f.F, a)}, {"f1", coeffs(f.F, b)}};
}

json field_json(const Adjoined& L) {
    NormalForm nf = normal_form(L.G);
    return json{{"e", L.G->e() / L.emb.from->e()},
                {"f", L.G->f() / L.emb.from->f()},
                {"degree", L.G->degree() / L.emb.from->degree()},
                {"h", kpoly_str(L.G->K(), L.G->h(), "w")},
                {"eisenstein", fpoly_str(nf.U, nf.eisenstein)},
                {"unramified", kpoly_str(L.G->K(), nf.unramified, "y")}};
}

json bounds_json(const DegreeBounds& b) {
    return json{{"p", b.p}, {"d", b.d}, {"q_d+1", b.q_dp1}, {"q_d-1", b.q_dm1}, {"q_d", b.q_d}, {"A", b.A}, {"B", b.B}};
}

json run_request(const std::string& cmd, const std::string& base, const json& in) {
    if (cmd == "bounds") {
        std::string p = opt_string(in, "p", ""), d = opt_string(in, "d", "");
        if (p.empty() || d.empty()) throw UsageError("bounds needs p and d");
        return bounds_json(degree_bounds(std::stol(p), std::stoi(d)));
    }
    BaseField K = BaseField::parse(base);
    FieldPtr F = ExtField::base(K);
    if (cmd == "approximants") {
        IndVal V = approximants(K, parse_kpoly(K, input_string(in, "f")));
        ExtInvariants inv = ext_invariants(V);
        return json{{"chain", chain_json(V)}, {"terminal", V.terminal()}, {"e", inv.e}, {"f", inv.f}};
    }
    if (cmd == "ramified-approx") {
        WtrResult w = ramified_approx(K, parse_kpoly(K, input_string(in, "f")));
        return json{{"phi", coeffs(F, w.phi)}, {"poly", fpoly_str(F, w.phi)}, {"e", w.e()},
                    {"f", w.f()},          {"j", w.j},                     {"disk", disk_json(w.disk)}};
    }
    if (cmd == "min-disk") {
        Diskoid D = min_disk_of_roots(F, to_fpoly(F, parse_kpoly(K, input_string(in, "f"))));
        return disk_json(D);
    }
    if (cmd == "diskoid-val") {
        FPoly phi = to_fpoly(F, parse_kpoly(K, input_string(in, "phi")));
        Val s = Val::parse(input_string(in, "s"));
        Diskoid D = make_diskoid(F, phi, s);
        FPoly g = to_fpoly(F, parse_kpoly(K, input_string(in, "g")));
        return json{{"disk", disk_json(D)}, {"value", diskoid_valuation(D, g).str()}};
    }
    if (cmd == "ec-semistable") {
        auto a = [&](const char* k) { return parse_kelem(K, opt_string(in, k, "0")); };
        WModel W = make_model(F, a("a1"), a("a2"), a("a3"), a("a4"), a("a6"));
        SemistableResult r = semistable_model(W);
        const FieldPtr& G = r.L.G;
        json model = json::array();
        for (const FE& c : r.model.a) model.push_back(G->str(c));
        return json{{"L", field_json(r.L)},
                    {"degree", r.degree()},
                    {"reduction", reduction_name(r.reduction)},
                    {"model", model},
                    {"transform",
                     {{"u", G->str(r.transform.u)},
                      {"r", G->str(r.transform.r)},
                      {"s", G->str(r.transform.s)},
                      {"t", G->str(r.transform.t)}}}};
    }
    if (cmd == "dyn-ordres") {
        RatMap f = ratmap_input(F, in);
        json out{{"map", ratmap_json(f)}, {"scalar", f.scalar.str()}, {"ordres", ordres(f).str()}};
        std::string t = opt_string(in, "t", "");
        if (!t.empty()) {
            FE alpha = F->from_k(parse_kelem(K, opt_string(in, "alpha", "0")));
            out["ordres_at"] = ordres_at(f, alpha, Val::parse(t).q()).str();
        }
        return out;
    }
    if (cmd == "dyn-semistable") {
        RatMap f = ratmap_input(F, in);
        MrlResult r = mrl_search(f);
        SemistableCheck chk = semistable_check(r.model);
        return json{{"center", fpoly_str(F, r.center.phi)},
                    {"center_source", r.center.source},
                    {"t", qstr(r.t)},
                    {"L", {{"e", r.e()}, {"f", r.f()}, {"degree", r.degree()}}},
                    {"ordres_before", r.ordres_before.str()},
                    {"ordres_after", r.ordres_min.str()},
                    {"bounds", {{"A", r.bounds.A}, {"B", r.bounds.B}}},
                    {"within_A", r.within_A},
                    {"within_B", r.within_B},
                    {"semistable", chk.semistable},
                    {"model", ratmap_json(r.model)}};
    }
    throw UsageError("unknown command '" + cmd + "'");
}

void print_text(const json& j, const std::string& indent = "") {
    for (auto it = j.begin(); it != j.end(); ++it) {
        const json& v = it.value();
        if (v.is_object()) {
            std::cout << indent << it.key() << ":\n";
            print_text(v, indent + "  ");
        } else if (v.is_array() && !v.empty() && v.front().is_object()) {
            std::cout << indent << it.key() << ":\n";
            for (size_t i = 0; i < v.size(); ++i) {
                std::cout << indent << "  [" << i + 1 << "]\n";
                print_text(v[i], indent + "    ");
            }
        } else {
            std::cout << indent << it.key() << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
        }
    }
}

json error_json(const std::string& code, const std::string& detail) {
    return json{{"error", code}, {"detail", detail}};
}

bool usage_code(const std::string& code) { return code == "ParseError" || code == "BadBaseSpec"; }

int run_batch(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "cannot open " << path << "\n";
        return 1;
    }
    std::string line;
    while (std::getline(in, line)) {
        json resp;
        try {
            json req = json::parse(line);
            std::string cmd = req.value("cmd", "");
            std::string base = req.value("base", "qp:2");
            json input = req.contains("input") ? req["input"] : json::object();
            resp = json{{"ok", true}, {"result", run_request(cmd, base, input)}};
        } catch (const Error& e) {
            resp = json{{"ok", false}, {"error", error_json(e.code(), e.detail())}};
        } catch (const std::exception& e) {
            resp = json{{"ok", false}, {"error", error_json("Usage", e.what())}};
        }
        std::cout << resp.dump() << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Key polynomials, weakly totally ramified approximation and semistable models"};
    app.require_subcommand(0, 1);
    std::string batch;
    bool as_json = false;
    app.add_option("--batch", batch, "JSONL file: one {\"cmd\", \"base\", \"input\"} request per line");
    app.add_flag("--json", as_json, "print JSON");

    std::string base = "qp:2";
    std::string poly;
    bool dot = false;
    json input = json::object();

    auto with_base = [&](CLI::App* sub) {
        sub->add_option("--base", base, "qp:<p>, fpt:<p> or qt")->capture_default_str();
        sub->add_flag("--json", as_json, "print JSON");
    };
    auto poly_cmd = [&](const char* name, const char* help) {
        CLI::App* sub = app.add_subcommand(name, help);
        with_base(sub);
        sub->add_option("poly", poly, "polynomial in z, or a coefficient list [c0,c1,...]")->required();
        return sub;
    };
    CLI::App* approx = poly_cmd("approximants", "approximant chain of an irreducible polynomial");
    approx->add_flag("--dot", dot, "print the chain as a DOT graph");
    poly_cmd("ramified-approx", "weakly totally ramified key inside the minimal disk of the roots");
    poly_cmd("min-disk", "minimal diskoid containing the roots");

    std::string phi, s;
    CLI::App* dval = app.add_subcommand("diskoid-val", "infimum valuation of g on D(phi, s)");
    with_base(dval);
    dval->add_option("--phi", phi)->required();
    dval->add_option("--s", s)->required();
    dval->add_option("g", poly)->required();

    std::array<std::string, 5> ai = {"0", "0", "0", "0", "0"};
    CLI::App* ec = app.add_subcommand("ec-semistable", "semistable model of a Weierstrass curve");
    with_base(ec);
    const char* names[5] = {"--a1", "--a2", "--a3", "--a4", "--a6"};
    for (int i = 0; i < 5; ++i) ec->add_option(names[i], ai[i])->capture_default_str();

    std::string f0, f1, alpha = "0", tval;
    int deg = -1;
    auto map_opts = [&](CLI::App* sub) {
        with_base(sub);
        sub->add_option("--deg", deg, "degree d of the forms");
        sub->add_option("--f0", f0, "coefficients of F0, X^d first")->required();
        sub->add_option("--f1", f1, "coefficients of F1, X^d first")->required();
    };
    CLI::App* dord = app.add_subcommand("dyn-ordres", "resultant valuation of a rational map");
    map_opts(dord);
    dord->add_option("--alpha", alpha, "centre for --t");
    dord->add_option("--t", tval, "ordres after z -> u z + alpha with v(u) = t");
    CLI::App* dss = app.add_subcommand("dyn-semistable", "conjugate with minimal resultant");
    map_opts(dss);

    long bp = -1;
    int bd = -1;
    CLI::App* bnd = app.add_subcommand("bounds", "degree bounds A(p, d) and B(p, d)");
    bnd->add_option("--p", bp)->required();
    bnd->add_option("--d", bd)->required();
    bnd->add_flag("--json", as_json, "print JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    if (!batch.empty()) return run_batch(batch);
    auto subs = app.get_subcommands();
    if (subs.empty()) {
        std::cerr << app.help();
        return 1;
    }
    std::string cmd = subs.front()->get_name();
    if (cmd == "approximants" || cmd == "ramified-approx" || cmd == "min-disk") input = json{{"f", poly}};
    if (cmd == "diskoid-val") input = json{{"phi", phi}, {"s", s}, {"g", poly}};
    if (cmd == "ec-semistable")
        input = json{{"a1", ai[0]}, {"a2", ai[1]}, {"a3", ai[2]}, {"a4", ai[3]}, {"a6", ai[4]}};
    if (cmd == "dyn-ordres" || cmd == "dyn-semistable") {
        input = json{{"f0", f0}, {"f1", f1}};
        if (deg >= 0) input["deg"] = std::to_string(deg);
        if (!tval.empty()) {
            input["t"] = tval;
            input["alpha"] = alpha;
        }
    }
    if (cmd == "bounds") input = json{{"p", std::to_string(bp)}, {"d", std::to_string(bd)}};

    try {
        if (cmd == "approximants" && dot) {
            BaseField K = BaseField::parse(base);
            std::cout << chain_dot(approximants(K, parse_kpoly(K, poly)));
            return 0;
        }
        json out = run_request(cmd, base, input);
        if (as_json)
            std::cout << out.dump(2) << "\n";
        else
            print_text(out);
        return 0;
    } catch (const Error& e) {
        std::cerr << error_json(e.code(), e.detail()).dump() << "\n";
        return usage_code(e.code()) ? 1 : 2;
    } catch (const UsageError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid number: " << e.what() << "\n";
        return 1;
    }
}
