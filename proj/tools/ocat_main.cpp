// ocat: exact computations with operad PROPs and their truncated
// representations. All machine output is JSON with sorted keys; exit code 0
// on success, 1 on a failed check, 2 on usage or parse errors.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ocat/convolution.hpp"
#include "ocat/groupside.hpp"
#include "ocat/module_io.hpp"
#include "ocat/presentation_io.hpp"
#include "ocat/reflection.hpp"
#include "ocat/resolution.hpp"
#include "ocat/verify.hpp"

using json = nlohmann::json;
using namespace ocat;

namespace {

int default_nmax() {
    if (const char* env = std::getenv("OCAT_NMAX")) {
        int v = std::atoi(env);
        if (v >= 2 && v <= 9) return v;
    }
    return 6;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

OperadPtr load_operad(const std::string& spec, int nmax) {
    if (spec == "lie" || spec == "leib" || spec == "assu" || spec == "comu" || spec == "I")
        return Operad::builtin(spec, nmax);
    // otherwise a presentation file
    std::string name = spec;
    auto slash = name.find_last_of('/');
    if (slash != std::string::npos) name = name.substr(slash + 1);
    auto dot = name.find('.');
    if (dot != std::string::npos) name = name.substr(0, dot);
    return Operad::build(parse_presentation(slurp(spec), name), nmax);
}

OperadElement select_mu(const OperadPtr& op, const std::string& sel) {
    if (sel.empty() || sel == "generator" || sel == "product") return op->mu_default();
    if (op->kind() != Operad::Kind::Presented)
        throw std::invalid_argument("--mu expressions need a presented operad");
    TreePoly p = parse_tree_poly(sel, op->presentation());
    if (p.arity != 2) throw std::invalid_argument("--mu must have arity 2");
    OperadElement x = op->zero(2);
    for (const auto& [c, t] : p.terms) {
        OperadElement e = op->eval_tree(t);
        x.coords.axpy(c, e.coords);
    }
    return x;
}

// module selectors: a path, or free:<m0>, alpha:<triv|sign>:<arity>,
// random:<seed>, unit
ModulePtr load_module(const std::string& sel, CatPtr cat, int bound) {
    if (sel.rfind("free:", 0) == 0) return free_module(cat, std::stoi(sel.substr(5)), bound);
    if (sel.rfind("alpha:", 0) == 0) {
        auto second = sel.find(':', 6);
        if (second == std::string::npos)
            throw std::invalid_argument("alpha selector: alpha:<triv|sign>:<arity>");
        std::string kind = sel.substr(6, second - 6);
        int arity = std::stoi(sel.substr(second + 1));
        SigmaModule m;
        m.N = bound;
        for (int k = 0; k <= bound; ++k) {
            m.spaces.push_back(k == arity ? Space({kind}) : Space());
            SymAction s;
            s.n = k;
            s.dim = k == arity ? 1 : 0;
            for (int a = 0; a + 1 < k; ++a) {
                LinMap g(s.dim, s.dim);
                if (s.dim == 1) g.set(0, 0, kind == "sign" ? rat(-1) : rat(1));
                s.gens.push_back(std::move(g));
            }
            m.sym.push_back(std::move(s));
        }
        if (kind != "triv" && kind != "sign")
            throw std::invalid_argument("alpha selector kind must be triv or sign");
        return alpha_embed(cat, m);
    }
    if (sel.rfind("random:", 0) == 0) {
        Rng rng(std::stoull(sel.substr(7)));
        return random_module(cat, bound, rng);
    }
    if (sel == "unit") return unit_module(cat, bound);
    return module_load(slurp(sel), cat);
}

json dims_json(ModulePtr f) {
    json out = json::object();
    for (int n = 0; n <= f->N; ++n) out[std::to_string(n)] = f->dim(n);
    return out;
}

json sigma_dims_json(const SigmaModule& m) {
    json out = json::object();
    for (int n = 0; n <= m.N; ++n) out[std::to_string(n)] = m.dim(n);
    return out;
}

void emit(const json& j, const std::string& out_path, bool pretty) {
    std::string text = pretty ? j.dump(2) : j.dump();
    text += "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream os(out_path);
        os << text;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact operad PROP calculator"};
    app.require_subcommand(1);

    std::string operad_spec = "lie";
    std::string mu_spec, module_spec, module2_spec, out_path, suite = "all";
    int max_arity = -1, bound = -1, m_obj = -1, n_obj = -1;
    int nmax = default_nmax();
    int slots = 2, letters = 2, cap = 3;
    std::uint64_t seed = 20240817;
    bool pretty = false;
    int threads = 1;

    app.add_option("--nmax", nmax, "truncation bound for operads");
    app.add_flag("--pretty", pretty, "indented JSON");
    app.add_option("--threads", threads, "library-level parallelism (reserved)");

    auto add_common = [&](CLI::App* cmd, bool with_mu = false, bool with_module = false) {
        cmd->add_option("--operad,-o", operad_spec, "builtin name or presentation file");
        if (with_mu) cmd->add_option("--mu", mu_spec, "generator|product|<tree expression>");
        if (with_module) {
            cmd->add_option("--module,-m", module_spec,
                            "module file or selector (free:K, alpha:triv:K, random:SEED, unit)");
            cmd->add_option("--bound", bound, "truncation bound of the module");
        }
        cmd->add_option("--out", out_path, "write JSON/module output to a file");
    };

    CLI::App* dims = app.add_subcommand("dims", "operad and hom-space dimension tables");
    add_common(dims);
    dims->add_option("--max", max_arity, "largest object");

    CLI::App* leib = app.add_subcommand("check-leibniz", "right Leibniz condition for (O, mu)");
    add_common(leib, true);
    leib->add_option("--max", max_arity, "largest tested arity in exhaustive mode");
    std::string mode = "generators";
    leib->add_option("--mode", mode, "generators|exhaustive");

    CLI::App* delta_cmd = app.add_subcommand("delta", "shift of a module");
    add_common(delta_cmd, false, true);

    CLI::App* coker_cmd = app.add_subcommand("coker-mu", "reflection F^mu of a module");
    add_common(coker_cmd, true, true);

    CLI::App* ker_cmd = app.add_subcommand("ker-mu", "kappa_mu of a module");
    add_common(ker_cmd, true, true);

    CLI::App* conv_cmd = app.add_subcommand("conv", "convolution of two modules");
    add_common(conv_cmd, false, true);
    conv_cmd->add_option("--module2", module2_spec, "second module selector");

    CLI::App* resolve_cmd = app.add_subcommand("resolve", "finite projective resolution");
    add_common(resolve_cmd, false, true);

    CLI::App* derived_cmd = app.add_subcommand("derived", "left derived functors of the reflection");
    add_common(derived_cmd, true, true);

    CLI::App* pbw_cmd = app.add_subcommand("pbw", "PBW dimension identities");
    add_common(pbw_cmd);
    pbw_cmd->add_option("--m", m_obj, "source object");
    pbw_cmd->add_option("--n", n_obj, "free group rank");
    pbw_cmd->add_option("--max", max_arity, "check all m, n up to this bound");

    CLI::App* grop_cmd = app.add_subcommand("grop-outer", "outer check for exponential functors");
    grop_cmd->add_option("--letters", letters, "generator dimension of T(V)");
    grop_cmd->add_option("--degree-cap", cap, "total degree cap");
    grop_cmd->add_option("--slots", slots, "free group rank window");
    grop_cmd->add_option("--out", out_path, "write JSON to a file");

    CLI::App* verify_cmd = app.add_subcommand("verify", "run named proposition checks");
    verify_cmd->add_option("suite", suite, "suite name or 'all'");
    verify_cmd->add_option("--seed", seed, "seed for the randomized suites");
    verify_cmd->add_option("--out", out_path, "write JSON to a file");

    for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (dims->parsed()) {
            int mx = max_arity > 0 ? max_arity : nmax;
            OperadPtr op = load_operad(operad_spec, std::max(2, mx));
            CatCat cat(op);
            json j;
            j["operad"] = op->name();
            json od = json::object();
            for (int n = 0; n <= mx; ++n) od[std::to_string(n)] = op->dim(n);
            j["operad_dims"] = od;
            json cd = json::object();
            for (int m = 0; m <= mx; ++m)
                for (int n = 0; n <= mx; ++n) {
                    long long d = cat.dim_by_formula(m, n);
                    if (d) cd[std::to_string(m) + "," + std::to_string(n)] = d;
                }
            j["cat_dims"] = cd;
            emit(j, out_path, pretty);
            return 0;
        }
        if (leib->parsed()) {
            OperadPtr op = load_operad(operad_spec, nmax);
            CatCat cat(op);
            OperadElement mu = select_mu(op, mu_spec);
            int mx = max_arity > 0 ? max_arity : nmax - 1;
            LeibnizReport rep = leibniz_check(
                cat, mu, mode == "exhaustive" ? LeibnizMode::Exhaustive : LeibnizMode::Generators,
                mx);
            json j;
            j["operad"] = op->name();
            j["mode"] = mode;
            j["holds"] = rep.holds;
            if (!rep.holds) {
                json w;
                w["arity"] = rep.defect->arity;
                json coords = json::object();
                for (const auto& [b, c] : rep.defect->coords.entries())
                    coords[op->basis_label(rep.defect->arity, b)] = rat_str(c);
                w["defect"] = coords;
                j["witness"] = w;
            }
            emit(j, out_path, pretty);
            return rep.holds ? 0 : 1;
        }

        auto with_module = [&](CLI::App* cmd) { return cmd->parsed(); };
        if (with_module(delta_cmd) || with_module(coker_cmd) || with_module(ker_cmd) ||
            with_module(conv_cmd) || with_module(resolve_cmd) || with_module(derived_cmd)) {
            OperadPtr op = load_operad(operad_spec, nmax);
            CatPtr cat = std::make_shared<CatCat>(op);
            int b = bound > 0 ? bound : nmax - 1;
            ModulePtr f = load_module(module_spec.empty() ? "free:2" : module_spec, cat, b);

            if (delta_cmd->parsed()) {
                ModulePtr d = delta_module(f);
                if (!out_path.empty()) {
                    std::ofstream os(out_path);
                    os << module_save(d);
                }
                json j;
                j["dims"] = dims_json(d);
                emit(j, "", pretty);
                return 0;
            }
            OperadElement mu = select_mu(op, mu_spec);
            if (coker_cmd->parsed() || ker_cmd->parsed()) {
                SubQuotient sq = coker_cmd->parsed() ? coker_mu(f, mu) : ker_mu(f, mu);
                if (!out_path.empty()) {
                    std::ofstream os(out_path);
                    os << module_save(sq.module);
                }
                json j;
                j["dims"] = dims_json(sq.module);
                j["in_mu_subcategory"] = is_in_mu(sq.module, mu);
                emit(j, "", pretty);
                return 0;
            }
            if (conv_cmd->parsed()) {
                ModulePtr g = load_module(module2_spec.empty() ? "unit" : module2_spec, cat, b);
                ConvModule c = convolution(f, g);
                if (!out_path.empty()) {
                    std::ofstream os(out_path);
                    os << module_save(c.module);
                }
                json j;
                j["dims"] = dims_json(c.module);
                emit(j, "", pretty);
                return 0;
            }
            if (resolve_cmd->parsed()) {
                int support = 0;
                for (int n = 0; n <= f->N; ++n)
                    if (f->dim(n) > 0) support = n;
                ChainComplex c = projective_resolution(f, support);
                std::string why;
                bool valid = resolution_is_valid(c, &why);
                json j;
                j["length"] = c.length();
                j["valid"] = valid;
                if (!valid) j["why"] = why;
                json terms = json::array();
                for (const auto& t : c.terms) terms.push_back(dims_json(t));
                j["terms"] = terms;
                j["target"] = dims_json(f);
                emit(j, out_path, pretty);
                return valid ? 0 : 1;
            }
            if (derived_cmd->parsed()) {
                int support = 0;
                for (int n = 0; n <= f->N; ++n)
                    if (f->dim(n) > 0) support = n;
                ChainComplex c = projective_resolution(f, support);
                DerivedReport rep = derived_mu(f, mu, c);
                json j;
                json ls = json::array();
                for (const auto& l : rep.L) ls.push_back(sigma_dims_json(l));
                j["L"] = ls;
                j["methods_agree"] = rep.methods_agree;
                j["L0_is_reflection"] = rep.l0_is_reflection;
                j["kappa_vanishing"] = rep.kappa_vanishing;
                if (!rep.detail.empty()) j["detail"] = rep.detail;
                emit(j, out_path, pretty);
                return rep.methods_agree ? 0 : 1;
            }
        }
        if (pbw_cmd->parsed()) {
            OperadPtr op = load_operad(operad_spec, nmax);
            if (op->name() != "lie")
                throw std::invalid_argument("pbw: only the lie operad is supported");
            CatPtr cat = std::make_shared<CatCat>(op);
            json j;
            json table = json::object();
            bool all_equal = true;
            int mx = max_arity > 0 ? max_arity : 3;
            auto run_pair = [&](int m, int n) {
                auto g = free_module(cat, m, m);
                long long lhs = pbw_dim(g, n);
                long long rhs = cat_ass_dim_formula(m, n);
                table[std::to_string(m) + "," + std::to_string(n)] =
                    json{{"pbw", lhs}, {"cat_assu", rhs}};
                if (lhs != rhs) all_equal = false;
            };
            if (m_obj >= 0 && n_obj >= 0) {
                run_pair(m_obj, n_obj);
            } else {
                for (int m = 1; m <= mx; ++m)
                    for (int n = 0; n <= mx; ++n) run_pair(m, n);
            }
            j["table"] = table;
            j["equal"] = all_equal;
            emit(j, out_path, pretty);
            return all_equal ? 0 : 1;
        }
        if (grop_cmd->parsed()) {
            ExpFunctor e(letters, cap);
            json j;
            json per = json::object();
            bool consistent = true;
            for (int n = 0; n <= slots; ++n) {
                auto rep = outer_check_exponential(e, n);
                per[std::to_string(n)] = json{{"outer", rep.outer},
                                              {"inner_trivial", rep.inner_trivial},
                                              {"consistent", rep.consistent}};
                if (!rep.consistent) consistent = false;
            }
            auto prim = primitive_conjugation_check(e, std::min(slots, 2));
            j["levels"] = per;
            j["primitive_conjugation"] = prim.ok;
            j["letters"] = letters;
            j["degree_cap"] = cap;
            emit(j, out_path, pretty);
            return consistent && prim.ok ? 0 : 1;
        }
        if (verify_cmd->parsed()) {
            VerifyOptions opt;
            opt.seed = seed;
            opt.threads = threads;
            VerifyContext ctx(opt);
            std::vector<CheckResult> results =
                suite == "all" ? run_all(ctx) : run_suite(ctx, suite);
            json j;
            json checks = json::object();
            bool ok = true;
            for (const auto& r : results) {
                json e;
                e["pass"] = r.pass;
                if (!r.detail.empty()) e["detail"] = r.detail;
                checks[r.name] = e;
                if (!r.pass) ok = false;
            }
            j["checks"] = checks;
            j["ok"] = ok;
            j["suite"] = suite;
            j["seed"] = seed;
            emit(j, out_path, pretty);
            if (pretty) {
                for (const auto& r : results)
                    std::cout << (r.pass ? "[pass] " : "[FAIL] ") << r.name
                              << (r.detail.empty() ? "" : "  (" + r.detail + ")") << "\n";
            }
            return ok ? 0 : 1;
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
