#include "gwpt/cli.hpp"

#include "gwpt/checks.hpp"
#include "gwpt/expr.hpp"
#include "gwpt/hilbert_surface.hpp"
#include "gwpt/vertex.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <optional>
#include <ostream>
#include <sstream>

namespace gwpt {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
    std::string ring = "p3";
    std::string table;
    std::string format = "text";
    unsigned threads = 0;
};

// A failure the user can act on: bad expression, missing table row, unusable ring
struct InputError {
    std::string kind;
    std::string message;
    std::optional<size_t> position;
};

class Session {
public:
    explicit Session(const Options& o) : opt_(o) {}

    bool json() const { return opt_.format == "json"; }

    // the P3 preset is shared with the table context so elements compare equal
    const RingPtr& ring()
    {
        if (!ring_) {
            if (opt_.ring == "p3") ring_ = context().p3;
            else {
                try {
                    ring_ = ring_by_name(opt_.ring);
                } catch (const std::exception& e) {
                    throw InputError{"ring", e.what(), std::nullopt};
                }
            }
        }
        return ring_;
    }

    const CheckContext& context()
    {
        if (!ctx_) {
            try {
                ctx_ = default_context(opt_.table);
            } catch (const std::exception& e) {
                throw InputError{"table", e.what(), std::nullopt};
            }
            ctx_->threads = opt_.threads;
        }
        return *ctx_;
    }

    // commands that read the series table live over the P3 preset
    const CheckContext& table_context()
    {
        if (opt_.ring != "p3") throw InputError{"ring", "series tables exist only for --ring p3", std::nullopt};
        return context();
    }

    ExprValue value(const std::string& text)
    {
        try {
            return evaluate(parse_expression(text, ring()), ring());
        } catch (const ParseError& e) {
            throw InputError{"parse", e.what(), e.pos};
        }
    }

    PtElement pt(const std::string& text)
    {
        ExprValue v = value(text);
        if (auto* p = std::get_if<PtElement>(&v)) return *p;
        if (auto* s = std::get_if<WScalar>(&v)) {
            if (s->is_zero()) return PtElement(ring(), PtBasis::ch);
            if (s->is_monomial() && s->min_exponent() == 0) return PtElement::constant(ring(), s->coeff(0));
        }
        throw InputError{"type", "expected a PT descendent expression", std::nullopt};
    }

private:
    Options opt_;
    RingPtr ring_;
    std::optional<CheckContext> ctx_;
};

// Output of a value-producing command
struct ValueReport {
    std::string result;
    Json extra = Json::object();
};

void emit_value(std::ostream& out, Session& s, const std::string& command, const ValueReport& v)
{
    if (!s.json()) {
        out << v.result << "\n";
        return;
    }
    Json j;
    j["command"] = command;
    j["ok"] = true;
    j["result"] = v.result;
    for (const auto& [key, val] : v.extra.items()) j[key] = val;
    out << j.dump(2) << "\n";
}

int emit_checks(std::ostream& out, Session& s, const std::string& command, const std::vector<CheckResult>& results)
{
    out << (s.json() ? format_json(command, results) : format_text(results));
    return all_ok(results) ? kExitOk : kExitCheckFailed;
}

int emit_error(std::ostream& out, std::ostream& err, bool json, const std::string& command, const InputError& e)
{
    if (json) {
        Json j;
        j["command"] = command;
        j["ok"] = false;
        Json rec;
        rec["kind"] = e.kind;
        rec["message"] = e.message;
        if (e.position) rec["position"] = *e.position;
        j["error"] = rec;
        out << j.dump(2) << "\n";
    } else {
        err << "error (" << e.kind << "): " << e.message << "\n";
    }
    return kExitInputError;
}

std::string range_str(int lo, int hi)
{
    return std::to_string(lo) + ".." + std::to_string(hi);
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Options opt;
    CLI::App app{"Descendent Virasoro and GW/PT correspondence checks", "gwpt"};
    app.require_subcommand(1);
    app.add_option("--ring", opt.ring, "p3, p2, p1xp1, p2xp1, p1xp1xp1 or a JSON ring file");
    app.add_option("--table", opt.table, "series table (JSON lines); default: bundled P3 degree-1 table");
    app.add_option("--format", opt.format, "report format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--threads", opt.threads, "worker threads for sweeps (0: all cores)");

    std::string expr, to, op = "L", shift = "none";
    int k = 0;
    bool normalize = false;

    auto* expand = app.add_subcommand("expand", "print the canonical form of an expression");
    expand->add_option("expr", expr)->required();
    expand->add_option("--to", to, "ch, tch, tau or a")->check(CLI::IsMember({"ch", "tch", "tau", "a"}));

    auto* vir = app.add_subcommand("virasoro-apply", "apply L_k or Lcal_k (PT or GW by the expression)");
    vir->add_option("-k", k)->required()->check(CLI::Range(-1, 1000));
    vir->add_option("expr", expr)->required();
    vir->add_option("--operator", op, "L or Lcal; on GW expressions L means L~")->check(CLI::IsMember({"L", "Lcal"}));
    vir->add_flag("--normalize", normalize, "bracket-normalize a PT result over the line class");

    auto* corr = app.add_subcommand("correspond", "C.(D) in the tau basis");
    corr->add_option("expr", expr)->required();
    corr->add_option("--shift", shift, "constant in tau_0 = a_1 + shift")->check(CLI::IsMember({"none", "todd"}));
    corr->add_option("--to", to, "tau or a")->check(CLI::IsMember({"tau", "a"}));

    auto* inter = app.add_subcommand("intertwine", "C.(L_k D) against (iu)^-k L~_k C.(D)");
    inter->add_option("-k", k)->required()->check(CLI::Range(-1, 1000));
    inter->add_option("expr", expr)->required();

    auto* bracket = app.add_subcommand("bracket", "<D> over the line class from the series table");
    bracket->add_option("expr", expr)->required();

    auto* verify = app.add_subcommand("verify", "Virasoro relations and the acceptance suite");
    bool verify_all = false;
    std::vector<int> criteria;
    verify->add_flag("--all", verify_all, "run every acceptance criterion");
    verify->add_option("--criterion", criteria, "run selected criteria")->check(CLI::Range(1, kCriteria));
    verify->add_option("-k", k, "with an expression: check <Lcal_k D> = 0")->check(CLI::Range(-1, 1000));
    verify->add_option("expr", expr);

    auto* vv = app.add_subcommand("vertex-verify", "vertex residues against the C-circ formulas");
    int k1 = 6, k2 = 6, k3 = 3;
    vv->add_option("--k1", k1, "one point: k <= k1")->check(CLI::Range(0, 12));
    vv->add_option("--k2", k2, "two points: k1 + k2 <= k2")->check(CLI::Range(-1, 12));
    vv->add_option("--k3", k3, "three points: all k_i <= k3")->check(CLI::Range(-1, 6));
    bool printed = false;
    vv->add_flag("--printed", printed, "also compare the engine with the printed expansions");

    auto* hil = app.add_subcommand("hilbert-check", "composition identity over surfaces");
    std::vector<std::string> surfaces{"p2", "p1xp1"};
    std::vector<int> ks;
    int max_factors = 2, max_index = 8;
    hil->add_option("--surface", surfaces)->check(CLI::IsMember({"p2", "p1xp1"}));
    hil->add_option("-k", ks, "default -1..3")->check(CLI::Range(-1, 1000));
    hil->add_option("--max-factors", max_factors)->check(CLI::Range(0, 4));
    hil->add_option("--max-index", max_index)->check(CLI::Range(0, 30));

    auto* pred = app.add_subcommand("gw-predict", "GW side predicted for <D>^PT");
    std::optional<int> d_beta;
    pred->add_option("expr", expr)->required();
    pred->add_option("--d-beta", d_beta, "int_beta c1; default: the line class of P3");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    Session s(opt);
    const std::string command = app.get_subcommands().front()->get_name();
    try {
        if (*expand) {
            ExprValue v = s.value(expr);
            if (auto* p = std::get_if<PtElement>(&v)) {
                if (to == "ch") v = to_ch(*p);
                else if (to == "tch") v = to_tch(*p);
                else if (!to.empty()) throw InputError{"type", "a PT expression expands in ch or tch", std::nullopt};
            } else if (auto* g = std::get_if<GwElement>(&v)) {
                if (to == "tau") v = a_to_tau(*g);
                else if (to == "a") v = tau_to_a(*g);
                else if (!to.empty()) throw InputError{"type", "a GW expression expands in tau or a", std::nullopt};
            }
            emit_value(out, s, command, {format_value(v)});
            return kExitOk;
        }
        if (*vir) {
            ExprValue v = s.value(expr);
            if (auto* g = std::get_if<GwElement>(&v)) {
                const auto which = op == "Lcal" ? GwVirasoroKind::Lcal : GwVirasoroKind::Ltilde;
                emit_value(out, s, command, {apply_gw_virasoro(k, *g, which).str()});
                return kExitOk;
            }
            PtElement D = to_ch(s.pt(expr));
            PtElement r = apply_virasoro(k, D, op == "Lcal" ? VirasoroKind::Lcal : VirasoroKind::L);
            if (normalize) r = bracket_normalize(r, s.table_context().beta);
            emit_value(out, s, command, {r.str()});
            return kExitOk;
        }
        if (*corr) {
            const PtElement D = s.pt(expr);
            GwElement g = c_bullet(D, shift == "todd" ? A1Shift::todd : A1Shift::none);
            if (to == "a") g = tau_to_a(g, shift == "todd" ? A1Shift::todd : A1Shift::none);
            emit_value(out, s, command, {g.str()});
            return kExitOk;
        }
        if (*inter) {
            const PtElement D = s.pt(expr);
            if (!is_essential(D)) throw InputError{"domain", "intertwining needs an essential descendent", std::nullopt};
            const IntertwineResult r = intertwine_check(k, D);
            CheckResult c;
            c.id = "intertwine";
            c.name = "k = " + std::to_string(k) + ", D = " + D.str();
            c.ok = r.ok;
            c.summary = r.ok ? "ok" : "nonzero difference";
            if (!r.ok) c.failures.push_back({D.str(), r.difference.str()});
            return emit_checks(out, s, command, {c});
        }
        if (*bracket) {
            const CheckContext& ctx = s.table_context();
            const PtElement D = s.pt(expr);
            try {
                const QRational v = evaluate_bracket(to_ch(D), ctx.table, ctx.beta);
                ValueReport rep{v.str()};
                rep.extra["numerator"] = v.num().str();
                rep.extra["denominator"] = v.den().str();
                emit_value(out, s, command, rep);
            } catch (const MissingKey& e) {
                throw InputError{"missing_key", e.what(), std::nullopt};
            }
            return kExitOk;
        }
        if (*verify) {
            if (verify_all || !criteria.empty()) {
                if (opt.ring != "p3") throw InputError{"ring", "the acceptance suite runs over --ring p3", std::nullopt};
                std::vector<int> ids = criteria;
                if (verify_all) {
                    ids.clear();
                    for (int i = 1; i <= kCriteria; ++i) ids.push_back(i);
                }
                return emit_checks(out, s, command, run_criteria(ids, s.context()));
            }
            if (expr.empty()) throw InputError{"usage", "verify needs --all, --criterion or -k with an expression", std::nullopt};
            const CheckContext& ctx = s.table_context();
            const PtElement D = to_ch(s.pt(expr));
            CheckResult c;
            c.id = "virasoro";
            c.name = "<Lcal_" + std::to_string(k) + "(" + D.str() + ")>";
            try {
                const QRational v = verify_virasoro_relation(k, D, ctx.table, ctx.beta);
                c.ok = v.is_zero();
                c.summary = c.ok ? "0" : v.str();
                if (!c.ok) c.failures.push_back({D.str(), v.str()});
            } catch (const MissingKey& e) {
                throw InputError{"missing_key", e.what(), std::nullopt};
            }
            return emit_checks(out, s, command, {c});
        }
        if (*vv) {
            std::vector<CheckResult> results;
            CheckResult c;
            c.id = "vertex";
            c.name = "residues, 1-point k <= " + std::to_string(k1) + ", 2-point k1+k2 <= " + std::to_string(k2) +
                     ", 3-point k_i <= " + std::to_string(k3);
            const VertexReport r = vertex_verify(k1, k2, k3);
            c.ok = r.ok();
            c.summary = std::to_string(r.checked) + " coefficient families, " + std::to_string(r.mismatches.size()) +
                        " mismatches";
            for (const auto& m : r.mismatches) c.failures.push_back({"residue", m});
            results.push_back(c);
            if (printed) {
                CheckResult p;
                p.id = "printed";
                p.name = "engine against printed expansions";
                const auto fc = check_printed_expansions();
                p.ok = true;
                for (const auto& f : fc) {
                    if (f.ok) continue;
                    p.ok = false;
                    p.failures.push_back({f.name + " r^" + std::to_string(f.r_order), f.detail});
                }
                p.summary = std::to_string(fc.size() - p.failures.size()) + "/" + std::to_string(fc.size()) + " orders agree";
                results.push_back(p);
            }
            return emit_checks(out, s, command, results);
        }
        if (*hil) {
            if (ks.empty()) ks = {-1, 0, 1, 2, 3};
            std::vector<std::pair<std::string, int>> jobs;
            for (const auto& name : surfaces)
                for (int kk : ks) jobs.emplace_back(name, kk);
            std::vector<RingPtr> rings;
            for (const auto& name : surfaces) rings.push_back(ring_by_name(name));
            const auto results = parallel_map<CheckResult>(jobs.size(), opt.threads, [&](size_t i) {
                const auto& [name, kk] = jobs[i];
                const size_t si = static_cast<size_t>(i / ks.size());
                const CompositionReport r = composition_check(kk, rings[si], max_factors, max_index);
                CheckResult c;
                c.id = name + ":" + std::to_string(kk);
                c.name = "composition over " + name + ", k = " + std::to_string(kk);
                c.ok = r.ok();
                c.summary = std::to_string(r.checked) + " monomials (factors <= " + std::to_string(max_factors) +
                            ", indices " + range_str(0, max_index) + ")";
                for (const auto& m : r.mismatches) c.failures.push_back({m.input.str(), (m.lhs - m.rhs).str()});
                return c;
            });
            return emit_checks(out, s, command, results);
        }
        if (*pred) {
            const PtElement D = s.pt(expr);
            CurveClass beta;
            if (d_beta) beta.d_beta = Rational(*d_beta);
            else if (opt.ring == "p3") beta = s.context().beta;
            else throw InputError{"usage", "--d-beta is required outside --ring p3", std::nullopt};
            const GwPrediction p = gw_predict(D, beta);
            ValueReport rep{p.pt_prefactor + " <" + D.str() + ">^PT = <" + p.gw_side.str() + ">^GW"};
            rep.extra["d_beta"] = p.d_beta;
            rep.extra["pt_prefactor"] = p.pt_prefactor;
            rep.extra["gw_side"] = p.gw_side.str();
            emit_value(out, s, command, rep);
            return kExitOk;
        }
    } catch (const InputError& e) {
        return emit_error(out, err, s.json(), command, e);
    } catch (const std::exception& e) {
        return emit_error(out, err, s.json(), command, InputError{"domain", e.what(), std::nullopt});
    }
    return kExitUsage;
}

}  // namespace gwpt
