// bringv command-line front door: every operation as a subcommand with
// machine-readable JSON on stdout; diagnostics on stderr.
// Exit codes: 0 success, 1 assertion/internal failure, 2 usage error,
// 3 budget exceeded.
#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "bringv/acceptance.hpp"
#include "bringv/branch.hpp"
#include "bringv/bring5.hpp"
#include "bringv/geometry.hpp"
#include "bringv/redei.hpp"
#include "bringv/symmetry.hpp"

using json = nlohmann::ordered_json;
using namespace bringv;

namespace {

struct Global {
    u64 budget = 1'000'000'000;
    u64 seed = 0;
    unsigned threads = 0;
};

EnumOptions enum_opts(const Global& g) { return {g.budget, resolve_threads(g.threads)}; }

void emit(const std::string& subcommand, const json& params, const json& payload,
          std::chrono::steady_clock::time_point start, u64 budget_used = 0) {
    auto elapsed =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    json report{{"subcommand", subcommand},
                {"parameters", params},
                {"elapsedMs", elapsed.count()},
                {"budgetConsumed", budget_used}};
    std::cerr << report.dump() << "\n";
    std::cout << payload.dump() << "\n";
}

void write_point_set(const std::string& path, const PointSet& pts, const DiagonalSystem& S) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    const FieldCtx& ctx = pts.ctx();
    out << "# m=" << S.m << " q=" << ctx.p() << "^" << ctx.k() << " K=";
    for (size_t i = 0; i < S.exponents.size(); ++i) {
        if (i) out << ",";
        out << S.exponents[i];
    }
    out << "\n";
    for (size_t i = 0; i < pts.size(); ++i) {
        auto pt = pts[i];
        for (size_t j = 0; j < pt.size(); ++j) {
            if (j) out << ";";
            out << ctx.serialize_elem(pt[j]);
        }
        out << "\n";
    }
}

json orders_json(const OrderSequence& os) {
    json j;
    j["orders"] = os.orders;
    j["lastOrder"] = os.orders.back();
    j["precisionUsed"] = os.precision_used;
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"generalized Bring curves over finite fields: enumeration, orbits, invariants"};
    app.require_subcommand(1);
    app.fallthrough();
    Global g;
    app.add_option("--budget", g.budget, "evaluation budget for enumerations")->capture_default_str();
    app.add_option("--seed", g.seed, "seed for sampled checks")->capture_default_str();
    app.add_option("--threads", g.threads, "worker threads (0 = all cores)")->capture_default_str();

    // count
    u32 m = 5;
    u64 p = 7;
    u32 ext = 1;
    bool affine = false;
    std::string out_path;
    auto* count = app.add_subcommand("count", "count points of the curve over F_{p^ext}");
    count->add_option("--m", m)->required();
    count->add_option("--p", p)->required();
    count->add_option("--ext", ext);
    count->add_flag("--affine", affine, "count nonzero affine solutions instead");
    count->add_option("--out", out_path, "dump the point set to a file");

    auto* classify = app.add_subcommand("classify", "orbit classification histogram of the point set");
    classify->add_option("--m", m)->required();
    classify->add_option("--p", p)->required();
    classify->add_option("--ext", ext);

    u32 from_m = 5, to_m = 12;
    bool csv = false;
    auto* genus_cmd = app.add_subcommand("genus", "degree and genus");
    genus_cmd->add_option("--m", m);
    genus_cmd->add_flag("--csv", csv, "emit CSV rows m,degree,genus for a range");
    genus_cmd->add_option("--from", from_m);
    genus_cmd->add_option("--to", to_m);

    u32 l = 2;
    auto* qgenus = app.add_subcommand("quotient-genus", "genus of the coordinate-stabilizer quotient");
    qgenus->add_option("--m", m);
    qgenus->add_option("--l", l, "number of fixed coordinates");
    qgenus->add_flag("--csv", csv, "emit CSV rows m,l,quotient_genus for a range");
    qgenus->add_option("--from", from_m);
    qgenus->add_option("--to", to_m);

    auto* plane = app.add_subcommand("plane-curve", "plane quotient model: count and bound");
    plane->add_option("--m", m)->required();
    plane->add_option("--p", p)->required();
    plane->add_option("--ext", ext);

    u64 limit = 10000;
    auto* maxscan = app.add_subcommand("maximal-scan", "primes where the genus-4 curve is F_{p^2}-maximal");
    maxscan->add_option("--limit", limit)->capture_default_str();

    std::string point_kind = "rational";
    size_t precision = 0, max_precision = 0;
    auto* orderseq = app.add_subcommand("order-seq", "hyperplane intersection orders at a point");
    orderseq->add_option("--p", p)->required();
    orderseq->add_option("--m", m, "defaults to p-1");
    orderseq->add_option("--point", point_kind, "rational | omega | epsilon");
    orderseq->add_option("--precision", precision, "initial series precision (default 3p)");
    orderseq->add_option("--max-precision", max_precision, "doubling cap (default max(8p, 2p^3+8p))");

    auto* redei_cmd = app.add_subcommand("redei", "classify the p-variable system's solutions over F_p");
    redei_cmd->add_option("--p", p)->required();

    u32 max_ext = 2;
    auto* regular = app.add_subcommand("regular", "regular-sequence probe for exponents {1..m}");
    regular->add_option("--m", m)->required();
    regular->add_option("--p", p)->required();
    regular->add_option("--max-ext", max_ext)->capture_default_str();

    std::vector<u32> keep;
    auto* project = app.add_subcommand("project-check", "fiber histogram of a coordinate projection");
    project->add_option("--m", m)->required();
    project->add_option("--p", p)->required();
    project->add_option("--ext", ext);
    project->add_option("--keep", keep, "kept coordinate indices, 1-based")->required()->delimiter(',');

    u64 samples = 100;
    auto* isocheck = app.add_subcommand("isogeny-check", "sampled isogeny images land on the target curve");
    isocheck->add_option("--p", p)->required();
    isocheck->add_option("--samples", samples)->capture_default_str();

    auto* invcheck = app.add_subcommand("invariants-check", "b1/d1 invariants at sampled curve points");
    invcheck->add_option("--p", p)->required();
    invcheck->add_option("--ext", ext);
    invcheck->add_option("--samples", samples)->capture_default_str();

    auto* verify = app.add_subcommand("verify-all", "run the full acceptance suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    auto start = std::chrono::steady_clock::now();
    try {
        if (count->parsed()) {
            FieldCtx ctx(p, ext);
            auto S = DiagonalSystem::bring(ctx, m);
            if (!S.exponents_below_p())
                std::cerr << "warning: exponents reach p; Vandermonde rank guarantees do not apply\n";
            json params{{"m", m}, {"p", p}, {"ext", ext}, {"affine", affine}};
            if (affine) {
                auto c = enumerate_affine_solutions(S, enum_opts(g));
                emit("count", params,
                     json{{"nonzero", c.nonzero}, {"zeroVector", c.zero_vector_is_solution}}, start,
                     c.evaluations);
            } else {
                auto pts = enumerate_projective_points(S, enum_opts(g));
                if (!out_path.empty()) write_point_set(out_path, pts, S);
                emit("count", params, json{{"points", pts.size()}}, start);
            }
        } else if (classify->parsed()) {
            FieldCtx ctx(p, ext);
            auto S = DiagonalSystem::bring(ctx, m);
            auto pts = enumerate_projective_points(S, enum_opts(g));
            std::map<std::string, u64> hist{{"Omega_omega", 0}, {"Omega_epsilon", 0}, {"Omega_theta", 0}, {"Generic", 0}};
            for (size_t i = 0; i < pts.size(); ++i) ++hist[orbit_label_name(classify_orbit(ctx, pts[i]))];
            emit("classify", json{{"m", m}, {"p", p}, {"ext", ext}}, json(hist), start);
        } else if (genus_cmd->parsed()) {
            if (csv) {
                for (u32 mm = from_m; mm <= to_m; ++mm)
                    std::cout << mm << "," << factorial(mm - 2) << "," << genus(mm) << "\n";
            } else {
                auto inv = curve_invariants(m);
                emit("genus", json{{"m", m}},
                     json{{"genus", inv.genus}, {"degree", inv.degree}, {"ambientDim", inv.ambient_dim}},
                     start);
            }
        } else if (qgenus->parsed()) {
            if (csv) {
                for (u32 mm = std::max(from_m, l + 2); mm <= to_m; ++mm)
                    std::cout << mm << "," << l << "," << quotient_genus(mm, l) << "\n";
            } else {
                emit("quotient-genus", json{{"m", m}, {"l", l}}, json{{"quotientGenus", quotient_genus(m, l)}},
                     start);
            }
        } else if (plane->parsed()) {
            FieldCtx ctx(p, ext);
            u64 n = plane_point_count(ctx, m, enum_opts(g));
            u64 bound = sv_plane_classical(ctx.q(), m - 2, quotient_genus(m, 3));
            json payload{{"points", n},
                         {"svBound", bound},
                         {"degree", m - 2},
                         {"genus", quotient_genus(m, 3)},
                         {"identityVerified", verify_plane_identity(m)},
                         {"degenerateBound", m - 2 < 2}};
            emit("plane-curve", json{{"m", m}, {"p", p}, {"ext", ext}}, payload, start);
        } else if (maxscan->parsed()) {
            auto primes = maximality_scan(limit, resolve_threads(g.threads));
            emit("maximal-scan", json{{"limit", limit}}, json{{"primes", primes}}, start);
        } else if (orderseq->parsed()) {
            if (!orderseq->count("--m")) m = static_cast<u32>(p - 1);
            u32 need_ext = 1;
            FieldCtx base(p, 1);
            Point center;
            if (point_kind == "rational") {
                if (m != p - 1) throw std::invalid_argument("rational center requires m = p-1");
                center = eigen_center(base, m);
            } else if (point_kind == "omega" || point_kind == "epsilon") {
                u64 n = point_kind == "omega" ? m : m - 1;
                while ((powmod(p, need_ext, n) != 1 % n)) ++need_ext;
            } else {
                throw std::invalid_argument("unknown --point kind");
            }
            FieldCtx ctx(p, need_ext);
            if (center.empty())
                center = point_kind == "omega" ? special_point_omega(ctx, m) : special_point_epsilon(ctx, m);
            auto S = DiagonalSystem::bring(ctx, m);
            BranchOptions bopt{precision, max_precision};
            auto os = order_sequence_at(S, center, bopt);
            json payload = orders_json(os);
            if (m == p - 1 && point_kind == "rational") {
                payload["hermitianTangentOrder"] = hermitian_tangent_order_at(S, center, bopt);
            }
            Branch B = branch_expand(S, center, os.precision_used);
            payload["frobeniusOsculating"] = frobenius_osculating_check(B);
            if (m == p - 1 && point_kind == "rational") {
                Eigenframe ef = transform_to_eigenframe(branch_expand(S, center, 3 * static_cast<size_t>(p)));
                json table = json::object();
                for (u32 kk = 2; kk + 1 < m; ++kk) {
                    json row = json::array();
                    for (size_t i2 = 0; i2 < ef.rows[kk - 1].size(); ++i2) {
                        if (ef.rows[kk - 1][i2])
                            row.push_back(json{{"i", i2}, {"coefficient", ef.rows[kk - 1][i2]}});
                    }
                    table[std::to_string(kk)] = row;
                }
                payload["eigenframeRows"] = table;
            }
            emit("order-seq", json{{"p", p}, {"m", m}, {"point", point_kind}}, payload, start);
        } else if (redei_cmd->parsed()) {
            auto rep = classify_redei_solutions(p, g.budget, resolve_threads(g.threads));
            emit("redei", json{{"p", p}},
                 json{{"constant", rep.constant_count},
                      {"permutation", rep.permutation_count},
                      {"other", rep.other_count}},
                 start);
        } else if (regular->parsed()) {
            bool reg = regular_sequence_probe(p, m, max_ext, enum_opts(g));
            emit("regular", json{{"m", m}, {"p", p}, {"maxExt", max_ext}},
                 json{{"regular", reg}, {"evidence", "finite fields up to F_{p^" + std::to_string(max_ext) + "} only"}},
                 start);
        } else if (project->parsed()) {
            FieldCtx ctx(p, ext);
            auto S = DiagonalSystem::bring(ctx, m);
            auto pts = enumerate_projective_points(S, enum_opts(g));
            std::vector<u32> kept0;
            for (u32 idx : keep) {
                if (idx < 1 || idx > m) throw std::invalid_argument("--keep index out of range");
                kept0.push_back(idx - 1);
            }
            auto h = galois_projection_check(pts, kept0);
            json sizes = json::object();
            for (auto& [size, n] : h.size_counts) sizes[std::to_string(size)] = n;
            emit("project-check", json{{"m", m}, {"p", p}, {"ext", ext}, {"keep", keep}},
                 json{{"fibers", h.fibers}, {"genericFiberSize", h.generic_size}, {"fiberSizeHistogram", sizes}},
                 start);
        } else if (isocheck->parsed()) {
            auto rep = isogeny_check(p, samples, g.seed);
            emit("isogeny-check", json{{"p", p}, {"samples", samples}},
                 json{{"samples", rep.samples},
                      {"applied", rep.applied},
                      {"onTarget", rep.on_e2},
                      {"exceptional", rep.exceptional},
                      {"ok", rep.ok()}},
                 start);
            if (!rep.ok()) return 1;
        } else if (invcheck->parsed()) {
            FieldCtx ctx(p, ext);
            auto S = DiagonalSystem::bring(ctx, 5);
            auto pts = enumerate_projective_points(S, enum_opts(g));
            Permutation sigma(std::vector<u32>{1, 2, 3, 0, 4});
            u64 checked = 0, cubic_ok = 0, c4_ok = 0, e1_ok = 0, exceptional = 0;
            for (size_t i = 0; i < pts.size() && checked < samples; ++i) {
                Point v(pts[i].begin(), pts[i].end());
                auto bd = invariants_b1_d1(ctx, v);
                if (!bd) {
                    ++exceptional;
                    continue;
                }
                ++checked;
                cubic_ok += b1d1_cubic_relation(ctx, *bd);
                e1_ok += b1d1_on_e1(ctx, *bd);
                auto bd2 = invariants_b1_d1(ctx, apply_perm(ctx, sigma, v));
                c4_ok += bd2 && bd2->b1 == bd->b1 && bd2->d1 == bd->d1;
            }
            bool ok = checked > 0 && cubic_ok == checked && c4_ok == checked && e1_ok == checked;
            emit("invariants-check", json{{"p", p}, {"ext", ext}, {"samples", samples}},
                 json{{"checked", checked},
                      {"cubicOk", cubic_ok},
                      {"c4InvariantOk", c4_ok},
                      {"e1MemberOk", e1_ok},
                      {"exceptional", exceptional},
                      {"ok", ok}},
                 start);
            if (!ok) return 1;
        } else if (verify->parsed()) {
            auto results = run_acceptance(resolve_threads(g.threads));
            json arr = json::array();
            int failures = 0;
            for (auto& r : results) {
                std::cerr << (r.pass ? "PASS" : "FAIL") << " criterion " << r.id << ": " << r.label << " ["
                          << r.seconds << "s]" << (r.detail.empty() ? "" : " -- " + r.detail) << "\n";
                arr.push_back(json{{"id", r.id}, {"label", r.label}, {"pass", r.pass}, {"detail", r.detail}});
                failures += !r.pass;
            }
            json payload{{"criteria", arr},
                         {"allPass", failures == 0},
                         {"finiteFieldEvidenceOnly", finite_field_evidence_only()}};
            emit("verify-all", json::object(), payload, start);
            if (failures) return 1;
        }
    } catch (const budget_error& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
