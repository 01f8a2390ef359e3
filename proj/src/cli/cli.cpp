#include "mspec/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "mspec/acceptance.hpp"
#include "mspec/parse.hpp"
#include "mspec/polymoduli.hpp"
#include "mspec/rat3.hpp"

namespace mspec::cli {

using nlohmann::json;

namespace {

template <FieldElement K>
json list_json(const std::vector<K> &v) {
    json a = json::array();
    for (const auto &x : v) a.push_back(element_text(x));
    return a;
}

template <FieldElement K>
json map_doc(const ProjMap<K> &phi) {
    FieldSpec fs{};
    if constexpr (is_modp_v<K>) fs.p = phi.ctx().p;
    return {{"field", fs.to_string()}, {"degree", phi.degree()}, {"num", list_json(phi.a())}, {"den", list_json(phi.b())}};
}

template <FieldElement K>
ProjMap<K> map_from_doc(const json &doc, const typename K::Ctx &ctx) {
    try {
        const std::size_t d = doc.at("degree").get<std::size_t>();
        std::vector<K> a, b;
        for (const auto &x : doc.at("num")) a.push_back(from_rational<K>(ctx, Rational::parse(x.get<std::string>())));
        for (const auto &x : doc.at("den")) b.push_back(from_rational<K>(ctx, Rational::parse(x.get<std::string>())));
        if (a.size() != d + 1 || b.size() != d + 1) throw ParseError("map document: coefficient lists must have degree+1 entries");
        return ProjMap<K>::from_coeffs(a, b);
    } catch (const json::exception &e) {
        throw ParseError(std::string("map document: ") + e.what());
    }
}

FieldSpec doc_field(const json &doc) {
    try {
        return FieldSpec::parse(doc.at("field").get<std::string>());
    } catch (const json::exception &e) {
        throw ParseError(std::string("map document: ") + e.what());
    }
}

// Options shared by the commands that take a map.
struct MapInput {
    std::string expr, num, den, doc;
    std::vector<std::string> params;
    std::string a, b;

    void add(CLI::App *c) {
        c->add_option("--map", expr, "map in affine syntax, e.g. (z^2+1)/(z-3)");
        c->add_option("--num", num, "numerator coefficients a_1,...,a_{d+1}");
        c->add_option("--den", den, "denominator coefficients b_1,...,b_{d+1}");
        c->add_option("--map-json", doc, "MapDocument (JSON text, or @file)");
        c->add_option("--param", params, "parameter value name=value")->take_all();
        c->add_option("-a", a, "value of the parameter a");
        c->add_option("-b", b, "value of the parameter b");
    }

    template <FieldElement K>
    ProjMap<K> get(const typename K::Ctx &ctx) const {
        int given = !expr.empty() + !doc.empty() + (!num.empty() || !den.empty());
        if (given != 1) throw UsageError("give exactly one of --map, --num/--den, --map-json");
        if (!doc.empty()) {
            std::string text = doc;
            if (text.front() == '@') {
                std::ifstream in(text.substr(1));
                if (!in) throw UsageError("cannot read " + text.substr(1));
                std::stringstream ss;
                ss << in.rdbuf();
                text = ss.str();
            }
            json j;
            try {
                j = json::parse(text);
            } catch (const json::exception &e) {
                throw ParseError(std::string("map document: ") + e.what());
            }
            if (j.contains("map")) j = j["map"];
            return map_from_doc<K>(j, ctx);
        }
        if (!num.empty() || !den.empty()) {
            if (num.empty() || den.empty()) throw UsageError("--num and --den go together");
            return ProjMap<K>::from_coeffs(parse_list<K>(num, ctx), parse_list<K>(den, ctx));
        }
        std::map<std::string, K> values;
        auto put = [&](const std::string &name, const std::string &v) {
            values[name] = from_rational<K>(ctx, Rational::parse(v));
        };
        if (!a.empty()) put("a", a);
        if (!b.empty()) put("b", b);
        for (const auto &p : params) {
            auto eq = p.find('=');
            if (eq == std::string::npos) throw UsageError("--param expects name=value");
            put(p.substr(0, eq), p.substr(eq + 1));
        }
        return parse_map<K>(expr, ctx, values);
    }
};

template <class F>
auto with_field(const FieldSpec &fs, F &&f) {
    if (fs.is_rational()) return f(RationalField{});
    return f(fs.prime());
}

std::optional<std::vector<Rational>> rational_list(const std::string &text) {
    if (text.empty() || text == "random") return std::nullopt;
    return parse_list<Rational>(text, RationalField{});
}

json sigma2_part_json(const poly::Sigma2Part &p) {
    json j{{"solutions", p.solutions},
           {"classes", p.classes},
           {"quotient_dim", p.quotient_dim},
           {"distinct_sigma2", p.distinct_sigma2},
           {"separated", p.separated}};
    j["dropped"] = p.dropped ? json(*p.dropped) : json(nullptr);
    j["implied"] = p.dropped ? json(p.implied) : json(nullptr);
    return j;
}

json count_result_json(const poly::ConfigCountResult<ModP> &r) {
    json parts = json::array();
    for (const auto &p : r.parts) {
        json j{{"solutions", p.count.solutions}, {"classes", p.count.classes}, {"quotient_dim", p.count.quotient_dim}};
        j["dropped"] = p.dropped ? json(*p.dropped) : json(nullptr);
        j["implied"] = p.implied ? json(element_text(*p.implied)) : json(nullptr);
        j["zeta_closed"] = p.count.zeta_closed ? json(*p.count.zeta_closed) : json(nullptr);
        parts.push_back(j);
    }
    return {{"consistent", r.consistent}, {"lambdas", list_json(r.lambdas)}, {"solutions", r.solutions},
            {"classes", r.classes}, {"parts", parts}};
}

json sigma2_report_json(const poly::Sigma2Report &r) {
    json parts = json::array();
    for (const auto &p : r.parts) parts.push_back(sigma2_part_json(p));
    return {{"prime", std::to_string(r.prime)}, {"consistent", r.consistent}, {"separated", r.separated}, {"parts", parts}};
}

json tau32_draw_json(const rat3::Tau32Draw &d) {
    return {{"prime", std::to_string(d.prime)},
            {"lambdas", list_json(std::vector<ModP>{d.l0, d.l1, d.linf, d.lbeta})},
            {"bezout", d.bezout},
            {"affine_dim", d.affine_dim},
            {"distinct", d.distinct},
            {"degenerate", d.degenerate},
            {"degenerate_jacobian_zero", d.degenerate_jacobian_zero},
            {"simple", d.simple},
            {"degree", d.degree},
            {"aggregate_p123", d.aggregate_p123},
            {"simple_alpha_values", d.simple_alpha_values}};
}

const std::map<std::string, std::string> &config_keys() {
    static const std::map<std::string, std::string> keys = {
        {"field", "--field"},     {"seed", "--seed"},           {"budget", "--budget"}, {"repetitions", "--draws"},
        {"specialization", "--lambdas"}, {"d", "-d"},           {"n", "-n"},            {"map", "--map"},
    };
    return keys;
}

std::string trim(const std::string &s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

} // namespace

json map_document_rational(const ProjMap<Rational> &phi) { return map_doc(phi); }
json map_document_modp(const ProjMap<ModP> &phi) { return map_doc(phi); }
ProjMap<Rational> map_from_document_rational(const json &doc) {
    if (!doc_field(doc).is_rational()) throw ParseError("map document is not over QQ");
    return map_from_doc<Rational>(doc, RationalField{});
}
ProjMap<ModP> map_from_document_modp(const json &doc) {
    FieldSpec fs = doc_field(doc);
    if (fs.is_rational()) throw ParseError("map document is not over a prime field");
    return map_from_doc<ModP>(doc, fs.prime());
}

std::vector<std::string> config_arguments(const std::string &text) {
    std::vector<std::string> out;
    std::string experiment;
    std::set<std::string> seen;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw UsageError("config line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        if (!seen.insert(key).second) throw UsageError("config: duplicate key '" + key + "'");
        if (key == "experiment") {
            experiment = value;
            continue;
        }
        auto it = config_keys().find(key);
        if (it == config_keys().end()) throw UsageError("config: unknown key '" + key + "'");
        if (key == "specialization" && value == "random") continue;
        out.push_back(it->second);
        out.push_back(value);
    }
    if (!experiment.empty()) out.insert(out.begin(), experiment);
    return out;
}

int run_command(const std::vector<std::string> &input, std::ostream &out, std::ostream &err) {
    CLI::App app{"Multiplier spectra of rational maps: exact experiments", "mspec"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);

    std::string field_text = "QQ", config_file;
    std::uint64_t seed = 1, budget = 0;
    bool compact = false;
    app.add_option("--field", field_text, "QQ or GF:p");
    app.add_option("--seed", seed, "random seed");
    app.add_option("--budget", budget, "maximum Groebner reductions (0 = unlimited)");
    app.add_option("--config", config_file, "flat key = value experiment file");
    app.add_flag("--compact", compact, "single-line output");

    MapInput mi;
    unsigned n = 1;
    std::size_t d = 0;
    int draws = 3;
    std::string lambdas, points, l0, l1, linf, alpha, only;

    auto sub = [&](const char *name, const char *help) {
        CLI::App *c = app.add_subcommand(name, help);
        c->fallthrough();
        return c;
    };
    CLI::App *c_sigma = sub("sigma", "sigma_n of a map");
    mi.add(c_sigma);
    c_sigma->add_option("-n", n, "period")->check(CLI::PositiveNumber);
    CLI::App *c_tau = sub("tau", "(sigma_1, ..., sigma_n) of a map");
    mi.add(c_tau);
    c_tau->add_option("-n", n, "largest period")->check(CLI::PositiveNumber);
    CLI::App *c_rel = sub("relation", "residuals of the sigma_1 relations");
    mi.add(c_rel);
    CLI::App *c_pc = sub("poly-classes", "count polynomial classes with given fixed-point multipliers");
    c_pc->add_option("-d", d, "degree")->required();
    c_pc->add_option("--lambdas", lambdas, "multipliers (d-1, d or d+1 values) or 'random'");
    c_pc->add_option("--draws", draws, "number of primes (over QQ)")->check(CLI::PositiveNumber);
    CLI::App *c_s2 = sub("sigma2-check", "does sigma_2 separate the classes of a sigma_1 fiber");
    c_s2->add_option("-d", d, "degree")->required();
    c_s2->add_option("--lambdas", lambdas, "multipliers or 'random'");
    c_s2->add_option("--draws", draws, "number of primes (over QQ)")->check(CLI::PositiveNumber);
    CLI::App *c_p3 = sub("p3-form", "a and 27b^2 of z^3+az+b from the affine multipliers");
    c_p3->add_option("--lambdas", lambdas, "three multipliers")->required();
    CLI::App *c_dt = sub("deg-tau32", "deg(tau_{3,2}) experiment");
    c_dt->add_option("--lambdas", lambdas, "l0,l1,linf,lbeta or 'random'");
    c_dt->add_option("--draws", draws, "number of draws")->check(CLI::PositiveNumber);
    CLI::App *c_rc = sub("reconstruct", "map from fixed points and multipliers");
    c_rc->add_option("--points", points, "fixed points, 'inf' allowed")->required();
    c_rc->add_option("--lambdas", lambdas, "multipliers")->required();
    CLI::App *c_nf = sub("normal-form3", "degree-3 normal form from (l0, l1, linf, alpha)");
    c_nf->add_option("--l0", l0)->required();
    c_nf->add_option("--l1", l1)->required();
    c_nf->add_option("--linf", linf)->required();
    c_nf->add_option("--alpha", alpha)->required();
    CLI::App *c_rp = sub("reproduce-paper", "run the acceptance suite");
    c_rp->add_option("--only", only, "comma-separated criterion numbers");

    std::vector<std::string> args = input;
    try {
        // splice in the config file's arguments right after the subcommand,
        // skipping keys the command line sets itself
        for (std::size_t i = 0; i < args.size(); ++i) {
            std::string file;
            if (args[i] == "--config" && i + 1 < args.size()) file = args[i + 1];
            if (args[i].rfind("--config=", 0) == 0) file = args[i].substr(9);
            if (file.empty()) continue;
            std::ifstream in(file);
            if (!in) throw UsageError("cannot read config file " + file);
            std::stringstream ss;
            ss << in.rdbuf();
            std::vector<std::string> extra = config_arguments(ss.str());
            std::set<std::string> names;
            for (const auto &s : app.get_subcommands({})) names.insert(s->get_name());
            auto pos = std::find_if(args.begin(), args.end(), [&](const std::string &a) { return names.count(a) > 0; });
            std::vector<std::string> kept;
            std::size_t k = 0;
            if (!extra.empty() && names.count(extra.front())) {
                if (pos == args.end()) {
                    kept.push_back(extra.front());
                } else if (*pos != extra.front()) {
                    throw UsageError("config experiment '" + extra.front() + "' conflicts with subcommand '" + *pos + "'");
                }
                k = 1;
            } else if (!extra.empty() && extra.front().rfind("-", 0) != 0) {
                throw UsageError("config: unknown experiment '" + extra.front() + "'");
            }
            for (; k + 1 < extra.size(); k += 2)
                if (std::find(args.begin(), args.end(), extra[k]) == args.end()) {
                    kept.push_back(extra[k]);
                    kept.push_back(extra[k + 1]);
                }
            if (pos == args.end()) {
                args.insert(args.end(), kept.begin(), kept.end());
            } else {
                args.insert(pos + 1, kept.begin(), kept.end());
            }
            break;
        }
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError &e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error &e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    int code = 0;
    try {
        const FieldSpec fs = FieldSpec::parse(field_text);
        GroebnerOptions opts;
        if (budget) opts.max_reductions = budget;
        json doc{{"command", app.get_subcommands().front()->get_name()}, {"field", fs.to_string()}};

        if (c_sigma->parsed() || c_tau->parsed() || c_rel->parsed()) {
            with_field(fs, [&](const auto &ctx) {
                using K = std::decay_t<decltype(ctx.zero())>;
                ProjMap<K> phi = mi.get<K>(ctx);
                doc["map"] = map_doc(phi);
                if (c_sigma->parsed()) {
                    doc["n"] = n;
                    doc["sigma"] = list_json(sigma_n(phi, n));
                } else if (c_tau->parsed()) {
                    doc["n"] = n;
                    json t = json::array();
                    for (const auto &s : tau(phi, n)) t.push_back(list_json(s));
                    doc["tau"] = t;
                } else {
                    auto s = sigma_n(phi, 1);
                    auto r = sigma1_relation_residual(s, phi.degree(), phi.is_polynomial());
                    doc["degree"] = phi.degree();
                    doc["polynomial"] = phi.is_polynomial();
                    doc["sigma"] = list_json(s);
                    doc["theorem_residual"] = element_text(r.theorem);
                    doc["corollary_residual"] = r.polynomial ? json(element_text(*r.polynomial)) : json(nullptr);
                    if (!r.theorem.is_zero() || (r.polynomial && !r.polynomial->is_zero())) code = 1;
                }
                return 0;
            });
        } else if (c_pc->parsed()) {
            doc["d"] = d;
            if (fs.is_rational()) {
                doc["seed"] = seed;
                auto pr = poly::count_protocol(d, rational_list(lambdas), seed, draws, opts);
                json dr = json::array();
                for (const auto &x : pr.draws) {
                    json j = count_result_json(x.result);
                    j["prime"] = std::to_string(x.prime);
                    dr.push_back(j);
                }
                doc["solutions"] = pr.solutions;
                doc["classes"] = pr.classes;
                doc["agree"] = pr.agree;
                doc["draws"] = dr;
                if (!pr.agree) code = 1;
            } else {
                const PrimeField F = fs.prime();
                std::mt19937_64 rng(seed);
                std::vector<ModP> ls = lambdas.empty() || lambdas == "random" ? poly::random_consistent_multipliers(F, d, rng)
                                                                              : parse_list<ModP>(lambdas, F);
                auto r = poly::count_fixed_configurations(d, ls, rng, opts);
                doc.update(count_result_json(r));
            }
        } else if (c_s2->parsed()) {
            doc["d"] = d;
            if (fs.is_rational()) {
                doc["seed"] = seed;
                auto pr = poly::sigma2_protocol(d, rational_list(lambdas), seed, draws, opts);
                json dr = json::array();
                for (const auto &x : pr.draws) dr.push_back(sigma2_report_json(x));
                doc["separated"] = pr.separated;
                doc["agree"] = pr.agree;
                doc["draws"] = dr;
                if (!pr.agree) code = 1;
            } else {
                const PrimeField F = fs.prime();
                std::mt19937_64 rng(seed);
                std::vector<ModP> ls = lambdas.empty() || lambdas == "random" ? poly::random_consistent_multipliers(F, d, rng)
                                                                              : parse_list<ModP>(lambdas, F);
                doc.update(sigma2_report_json(poly::sigma2_discrimination(d, ls, rng, opts)));
            }
        } else if (c_p3->parsed()) {
            with_field(fs, [&](const auto &ctx) {
                using K = std::decay_t<decltype(ctx.zero())>;
                json cs = json::array();
                for (const auto &c : poly::p3_from_sigma1(parse_list<K>(lambdas, ctx)))
                    cs.push_back({{"a", element_text(c.a)}, {"b2_times_27", element_text(c.b2_times_27)},
                                  {"case", c.fixed_point_case}});
                doc["candidates"] = cs;
                return 0;
            });
        } else if (c_dt->parsed()) {
            if (!fs.is_rational()) throw UsageError("deg-tau32 draws its own primes; use --field QQ");
            std::optional<std::array<Rational, 4>> spec;
            if (auto l = rational_list(lambdas)) {
                if (l->size() != 4) throw UsageError("deg-tau32 takes four values l0,l1,linf,lbeta");
                spec = std::array<Rational, 4>{(*l)[0], (*l)[1], (*l)[2], (*l)[3]};
            }
            auto rep = rat3::deg_tau32_report(spec, seed, draws, opts);
            const auto &f = rep.first();
            doc["seed"] = seed;
            doc["bezout"] = f.bezout;
            doc["distinct"] = f.distinct;
            doc["degenerate"] = f.degenerate;
            doc["simple"] = f.simple;
            doc["degree"] = f.degree;
            doc["aggregate_p123"] = f.aggregate_p123;
            doc["agree"] = rep.agree;
            doc["disagreeing_draw"] = rep.disagreeing_draw ? json(*rep.disagreeing_draw) : json(nullptr);
            json dr = json::array();
            for (const auto &x : rep.draws) dr.push_back(tau32_draw_json(x));
            doc["draws"] = dr;
            if (!rep.agree) code = 1;
        } else if (c_rc->parsed()) {
            with_field(fs, [&](const auto &ctx) {
                using K = std::decay_t<decltype(ctx.zero())>;
                auto phi = rat3::reconstruct_from_fixed_data<K>(parse_points<K>(points, ctx), parse_list<K>(lambdas, ctx));
                doc["map"] = map_doc(phi);
                return 0;
            });
        } else if (c_nf->parsed()) {
            with_field(fs, [&](const auto &ctx) {
                using K = std::decay_t<decltype(ctx.zero())>;
                auto v = [&](const std::string &s) { return from_rational<K>(ctx, Rational::parse(s)); };
                rat3::Deg3Invariants<K> inv{v(l0), v(l1), v(linf), v(alpha), std::nullopt};
                auto phi = rat3::map_from_invariants(inv);
                doc["map"] = map_doc(phi);
                doc["lambda_alpha"] = element_text(rat3::lambda_alpha(inv.l0, inv.l1, inv.linf));
                return 0;
            });
        } else if (c_rp->parsed()) {
            std::set<int> ids;
            std::istringstream ls(only);
            for (std::string item; std::getline(ls, item, ',');) {
                try {
                    ids.insert(std::stoi(item));
                } catch (const std::exception &) {
                    throw UsageError("--only expects criterion numbers");
                }
            }
            auto results = acceptance::run_all(seed, ids);
            json cs = json::array();
            for (const auto &c : results) {
                cs.push_back({{"id", c.id},
                              {"title", c.title},
                              {"pass", c.pass},
                              {"known_unattainable", c.known_unattainable},
                              {"detail", c.detail},
                              {"line", (c.pass ? "PASS " : "FAIL ") + std::to_string(c.id) + " " + c.title}});
                err << acceptance::format_line(c) << "\n";
            }
            doc["seed"] = seed;
            doc["criteria"] = cs;
            doc["all_attainable_pass"] = acceptance::acceptable(results);
            if (!acceptance::acceptable(results)) code = 1;
        }
        out << (compact ? doc.dump() : doc.dump(2)) << "\n";
    } catch (const BudgetExhausted &e) {
        err << "budget exhausted: " << e.what() << "\n";
        return 3;
    } catch (const UsageError &e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError &e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return code;
}

} // namespace mspec::cli
