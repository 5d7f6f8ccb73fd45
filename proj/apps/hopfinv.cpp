#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "hopfinv/algebra_io.hpp"
#include "hopfinv/algebrazoo.hpp"
#include "hopfinv/calibration.hpp"
#include "hopfinv/invariant.hpp"
#include "hopfinv/oracles.hpp"
#include "hopfinv/selftest.hpp"

using namespace hopfinv;
using json = nlohmann::ordered_json;

namespace {

std::string data_dir() {
    if (const char* p = std::getenv("HOPFINV_DATA")) return p;
    return HOPFINV_DATA_DIR;
}

bool starts_with(const std::string& s, const std::string& p) { return s.rfind(p, 0) == 0; }

HopfAlgebra algebra_arg(const std::string& src, bool verify = true) {
    if (starts_with(src, "zoo:")) return zoo_algebra(src.substr(4));
    return load_algebra(src, verify);
}

Diagram diagram_arg(const std::string& src) {
    if (starts_with(src, "builtin:")) return builtin_diagram(src.substr(8), default_record());
    return load_diagram(src);
}

std::string yesno(bool b) { return b ? "true" : "false"; }

int cmd_verify(const std::string& src) {
    HopfAlgebra H = algebra_arg(src, false);
    auto rep = verify_axioms(H);
    std::cout << H.name() << " (dim " << H.dim() << ")\n" << rep.to_string();
    return rep.ok() ? 0 : 1;
}

int cmd_info(const std::string& src, bool as_json) {
    HopfAlgebra H = algebra_arg(src);
    auto D = derived_for(H, default_record().hopf);
    int odd = 0;
    for (int i = 0; i < H.dim(); ++i) odd += H.parity(i);
    Scalar t1 = trace_S_power(H, 1), t2 = trace_S_power(H, 2), tm = trace_S_power(H, -1);
    if (as_json) {
        json j;
        j["name"] = H.name();
        j["dim"] = H.dim();
        j["even"] = H.dim() - odd;
        j["odd"] = odd;
        j["cyclotomic_order"] = H.order();
        j["q"] = D->q.to_string();
        j["sigma"] = D->sigma;
        j["balanced"] = D->balanced;
        j["involutory"] = D->involutory;
        j["trace_S"] = t1.to_string();
        j["trace_S2"] = t2.to_string();
        j["trace_S_inv"] = tm.to_string();
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << "name: " << H.name() << "\n"
              << "dim: " << H.dim() << " (" << H.dim() - odd << " even, " << odd << " odd)\n"
              << "cyclotomic order: " << H.order() << "\n"
              << "q = " << D->q << "\n"
              << "sigma = " << D->sigma << "\n"
              << "balanced = " << yesno(D->balanced) << "\n"
              << "involutory = " << yesno(D->involutory) << "\n"
              << "Tr(S) = " << t1 << "\n"
              << "Tr(S^2) = " << t2 << "\n"
              << "Tr(S^-1) = " << tm << "\n";
    return 0;
}

int cmd_zoo(const std::string& spec, const std::string& out) {
    HopfAlgebra H = zoo_algebra(spec);
    if (out.empty())
        std::cout << algebra_to_json(H);
    else
        save_algebra(H, out);
    return 0;
}

int cmd_invariant(const std::string& alg, const std::string& dia, bool combed, const std::string& plan,
                  bool as_json) {
    HopfAlgebra H = algebra_arg(alg);
    Diagram d = diagram_arg(dia);
    auto rep = validate_diagram(d);
    if (!rep.ok()) throw Error("InvalidDiagram", rep.to_string());
    PlanKind pk = plan == "naive" ? PlanKind::Naive : PlanKind::Greedy;
    const auto& rec = default_record();
    InvariantResult r = combed ? evaluate_combed(d, H, rec, pk) : evaluate(d, H, rec, pk);
    if (as_json) {
        json j;
        j["algebra"] = r.algebra;
        j["diagram"] = r.diagram;
        j["cyclotomic_order"] = r.value.order();
        j["value"] = r.value.to_string();
        j["sign_order_parity"] = r.sign_order_parity;
        j["plan"] = {{"kind", plan}, {"steps", r.plan_stats.steps}, {"max_entries", r.plan_stats.max_entries},
                     {"total_entries", r.plan_stats.total_entries}};
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << r.value << "\n";
    std::cerr << "plan " << plan << ": " << r.plan_stats.steps << " contractions, largest intermediate "
              << r.plan_stats.max_entries << " entries, " << r.plan_stats.total_entries << " in total\n";
    return 0;
}

int cmd_move(const std::string& src, const std::string& spec, const std::string& out) {
    Diagram d = diagram_arg(src);
    Move m = Move::parse(spec);
    Diagram next = apply_move(d, m, default_record());
    if (out.empty() || out == "-")
        std::cout << diagram_to_json(next);
    else
        save_diagram(next, out);
    return 0;
}

int cmd_validate(const std::string& src) {
    Diagram d = diagram_arg(src);
    auto rep = validate_diagram(d);
    if (rep.ok()) {
        std::cout << "valid, genus " << d.genus << ", " << d.crossing_count() << " crossings\n";
        return 0;
    }
    std::cout << rep.to_string();
    return 1;
}

int cmd_selftest(bool full) {
    int failures = 0;
    auto line = [&](bool ok, const std::string& what) {
        std::cout << (ok ? "PASS " : "FAIL ") << what << std::endl;
        if (!ok) ++failures;
    };
    std::string path = default_record_path();
    auto check = verify_record_file(path);
    line(check.ok, check.message);
    if (!check.ok) return 1;

    const auto& rec = default_record();
    auto bad = check_builtin_files(data_dir() + "/diagrams", rec);
    line(bad.empty(), bad.empty() ? "builtin diagram files match the record" : bad.front());

    auto val = [&](const std::string& d, const std::string& a) {
        return evaluate(builtin_diagram(d, rec), zoo_algebra(a), rec).value;
    };
    line(val("S3_genus1", "sweedler").is_one(), "S3 normalization on sweedler");
    line(val("L(3,1)", "group:S3") == Scalar(1, 3L), "L(3,1) on F[S3] counts 3 homomorphisms");
    line(val("RP3_left", "uq_sl2:3") == trace_S_power(uq_borel_sl2(3), 1), "RP3 on u_q(sl2+) r=3 is Tr(S)");
    line(val("L(5,2)#L(3,1)", "exterior:1") == Scalar(1, 15L), "exterior:1 counts |H_1| on a connected sum");

    if (full) {
        AcceptanceOptions opt;
        opt.record_path = path;
        run_acceptance(opt, [&](const CriterionResult& r) {
            line(r.pass, std::to_string(r.id) + " " + r.name + ": " + r.detail);
        });
    }
    return failures ? 1 : 0;
}

int cmd_calibrate(const std::string& out, const std::string& diagrams, bool report) {
    auto suite = CalibrationSuite::standard();
    if (report) std::cerr << run_calibration(suite).summary();
    ConventionRecord rec = calibrate_conventions(suite);
    if (out.empty())
        std::cout << rec.to_json();
    else {
        std::ofstream f(out);
        if (!f) throw ParseError("cannot write " + out);
        f << rec.to_json();
    }
    if (!diagrams.empty()) write_builtin_files(diagrams, rec);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Hopf-algebra invariants of 3-manifolds from Heegaard diagrams"};
    app.require_subcommand(1);
    int rc = 0;

    auto* alg = app.add_subcommand("algebra", "check or describe a Hopf algebra");
    alg->require_subcommand(1);
    std::string alg_src;
    bool info_json = false;
    auto* verify = alg->add_subcommand("verify", "run the axiom suite");
    verify->add_option("source", alg_src, "file or zoo:<spec>")->required();
    verify->callback([&] { rc = cmd_verify(alg_src); });
    auto* info = alg->add_subcommand("info", "dimension, q, traces of S");
    info->add_option("source", alg_src, "file or zoo:<spec>")->required();
    info->add_flag("--json", info_json);
    info->callback([&] { rc = cmd_info(alg_src, info_json); });

    auto* zoo = app.add_subcommand("zoo", "write a zoo algebra as a file");
    std::string zoo_spec, zoo_out;
    zoo->add_option("spec", zoo_spec, "e.g. sweedler, group:S3, uq_sl2:3")->required();
    zoo->add_option("-o,--output", zoo_out);
    zoo->callback([&] { rc = cmd_zoo(zoo_spec, zoo_out); });

    auto* inv = app.add_subcommand("invariant", "evaluate #(M,H)");
    std::string inv_alg, inv_dia, plan = "greedy";
    bool combed = false, inv_json = false;
    inv->add_option("--algebra", inv_alg, "file or zoo:<spec>")->required();
    inv->add_option("--diagram", inv_dia, "file or builtin:<name>")->required();
    inv->add_flag("--combed", combed, "drop tilt factors, needs a balanced algebra");
    inv->add_option("--plan", plan)->check(CLI::IsMember({"greedy", "naive"}));
    inv->add_flag("--json", inv_json);
    inv->callback([&] { rc = cmd_invariant(inv_alg, inv_dia, combed, plan, inv_json); });

    auto* dia = app.add_subcommand("diagram", "inspect and transform diagrams");
    dia->require_subcommand(1);
    std::string dia_src, move_spec, move_out;
    auto* move = dia->add_subcommand("move", "apply one move");
    move->add_option("source", dia_src, "file or builtin:<name>")->required();
    move->add_option("move", move_spec, "e.g. stabilize, reverse:U0, slide:U0:U1:0:1")->required();
    move->add_option("-o,--output", move_out);
    move->callback([&] { rc = cmd_move(dia_src, move_spec, move_out); });
    auto* show = dia->add_subcommand("show", "print as JSON");
    show->add_option("source", dia_src)->required();
    show->callback([&] { std::cout << diagram_to_json(diagram_arg(dia_src)); });
    auto* val = dia->add_subcommand("validate", "structural checks");
    val->add_option("source", dia_src)->required();
    val->callback([&] { rc = cmd_validate(dia_src); });
    auto* moves = dia->add_subcommand("moves", "list applicable moves");
    moves->add_option("source", dia_src)->required();
    moves->callback([&] {
        for (auto& m : applicable_moves(diagram_arg(dia_src))) std::cout << m.to_string() << "\n";
    });

    auto* orc = app.add_subcommand("oracle", "brute-force invariants");
    orc->require_subcommand(1);
    std::string orc_src, group;
    auto* hc = orc->add_subcommand("homcount", "|Hom(pi_1(M), G)|");
    hc->add_option("diagram", orc_src)->required();
    hc->add_option("--group", group, "Z5, S3, D4, Z2xZ2, ...")->required();
    hc->callback([&] { std::cout << hom_count(pi1_presentation(diagram_arg(orc_src)), group_by_name(group)) << "\n"; });
    auto* h1 = orc->add_subcommand("h1", "|H_1(M)|, 0 when infinite");
    h1->add_option("diagram", orc_src)->required();
    h1->callback([&] { std::cout << h1_order(diagram_arg(orc_src)).get_str() << "\n"; });
    auto* pi1 = orc->add_subcommand("pi1", "group presentation");
    pi1->add_option("diagram", orc_src)->required();
    pi1->callback([&] { std::cout << pi1_presentation(diagram_arg(orc_src)).to_string() << "\n"; });

    auto* cal = app.add_subcommand("calibrate", "search the convention space");
    std::string cal_out, cal_dia;
    bool cal_report = false;
    cal->add_option("-o,--output", cal_out, "record file");
    cal->add_option("--diagrams", cal_dia, "also write the builtin diagram files here");
    cal->add_flag("--report", cal_report, "candidate statistics on stderr");
    cal->callback([&] { rc = cmd_calibrate(cal_out, cal_dia, cal_report); });

    auto* st = app.add_subcommand("selftest", "re-verify the convention record and core values");
    bool full = false;
    st->add_flag("--full", full, "also run every acceptance criterion");
    st->callback([&] { rc = cmd_selftest(full); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return rc;
}
