#include "cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ipr/conditions.hpp"
#include "ipr/families.hpp"
#include "ipr/matrix.hpp"
#include "ipr/matrix_io.hpp"
#include "ipr/search.hpp"
#include "ipr/seq.hpp"
#include "ipr/systems.hpp"

namespace ipr::cli {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

int default_threads() {
    const char* e = std::getenv("IPR_THREADS");
    if (!e) return 1;
    int v = std::atoi(e);
    return v >= 1 ? v : 1;
}

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void write_output(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw ParseError("cannot write file: " + path);
    f << text;
}

std::string join_ints(const std::vector<long long>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ' ';
        os << v[i];
    }
    return os.str();
}

std::vector<std::vector<std::size_t>> parse_blocks(const std::string& spec) {
    std::vector<std::vector<std::size_t>> blocks;
    std::istringstream in(spec);
    std::string part;
    while (std::getline(in, part, ';')) {
        std::vector<std::size_t> block;
        std::istringstream pin(part);
        std::string tok;
        while (std::getline(pin, tok, ',')) {
            try {
                long long v = std::stoll(tok);
                if (v < 1) throw std::invalid_argument(tok);
                block.push_back(static_cast<std::size_t>(v));
            } catch (const std::exception&) {
                throw ParseError("bad block index '" + tok + "' in --blocks");
            }
        }
        blocks.push_back(std::move(block));
    }
    return blocks;
}

json report_skeleton(const std::string& command, json inputs, int threads) {
    json r;
    r["schema"] = 1;
    r["command"] = command;
    r["inputs"] = std::move(inputs);
    r["threads"] = threads;
    return r;
}

void emit_report(json& rep, Clock::time_point t0, std::ostream& out) {
    rep["timing_ms"] = ms_since(t0);
    out << rep.dump(2) << '\n';
}

json first_entries_json(const FirstEntriesReport& rep) {
    json fe = json::object();
    for (const auto& [col, val] : rep.first_entries) fe[std::to_string(col)] = val.str();
    json res;
    res["satisfied"] = rep.satisfied;
    res["first_entries"] = std::move(fe);
    res["violation"] = rep.violation ? json(*rep.violation) : json(nullptr);
    return res;
}

json verdict_json(const Verdict& v) {
    json res;
    res["N"] = v.n;
    res["enumeration_complete"] = v.enumeration_complete;
    switch (v.kind) {
        case VerdictKind::forced:
            res["verdict"] = "forced";
            res["images_used"] = v.images_used;
            break;
        case VerdictKind::avoidable:
            res["verdict"] = "avoidable";
            res["coloring"] = v.coloring->assignment;
            break;
        case VerdictKind::inconclusive:
            res["verdict"] = "inconclusive";
            res["reason"] =
                *v.reason == InconclusiveReason::no_images ? "no-images" : "budget-exhausted";
            break;
    }
    return res;
}

void print_verdict_plain(const Verdict& v, std::ostream& out) {
    switch (v.kind) {
        case VerdictKind::forced:
            out << "verdict: forced\nN: " << v.n << "\nimages: " << v.images_used << '\n';
            break;
        case VerdictKind::avoidable:
            out << "verdict: avoidable\nN: " << v.n << "\ncoloring:";
            for (int c : v.coloring->assignment) out << ' ' << c;
            out << '\n';
            break;
        case VerdictKind::inconclusive:
            out << "verdict: inconclusive\nN: " << v.n << "\nreason: "
                << (*v.reason == InconclusiveReason::no_images ? "no-images" : "budget-exhausted")
                << '\n';
            break;
    }
}

struct GenParams {
    long long n = 0;
    std::vector<long long> a;
    long long width = 0;
    long long row_cap = 5000;
    std::string out_path;
};

struct VerifyParams {
    std::string matrix;
    long long n = 0;
    int r = 0;
    long long xmax = 0;
    bool deepen = false;
    long long max_n = 0;
    unsigned long long budget = kDefaultSearchNodes;
    int threads = 0;
    bool as_json = false;
};

struct SetsParams {
    std::vector<long long> a;
    std::vector<long long> x;
    bool force = false;
    std::string kind;
    std::string blocks;
};

struct SubtractedParams {
    std::string matrix;
    long long offset = 0;
    long long width = 0;
    std::string m_matrix;
    long long rem_n = 0;
    int rem_r = 2;
    long long rem_xmax = 0;
    long long fin_n = 0;
    int fin_r = 2;
    long long fin_xmax = 0;
};

int cmd_gen_family(FamilyKind kind, const GenParams& p, std::ostream& out, std::ostream& err) {
    RowFamily fam(kind, CoefficientSeq(p.a));
    EnumeratedRows rows =
        enumerate_rows(fam, static_cast<std::size_t>(p.width), static_cast<std::size_t>(p.row_cap));
    if (rows.truncated)
        err << "warning: output truncated at " << p.row_cap << " rows\n";
    write_output(render_matrix(rows.matrix), p.out_path, out);
    return 0;
}

int cmd_check_first_entries(const std::string& path, std::ostream& out) {
    auto t0 = Clock::now();
    Matrix a = load_matrix_file(path);
    FirstEntriesReport rep = first_entries_check(a);
    json r = report_skeleton("check first-entries", {{"matrix", path}}, 1);
    r["result"] = first_entries_json(rep);
    emit_report(r, t0, out);
    return rep.satisfied ? 0 : 1;
}

int cmd_check_columns(const std::string& path, std::ostream& out) {
    auto t0 = Clock::now();
    Matrix a = load_matrix_file(path);
    auto cert = columns_condition_check(a);
    json r = report_skeleton("check columns-condition", {{"matrix", path}}, 1);
    json res;
    res["satisfied"] = cert.has_value();
    if (cert) {
        json c;
        c["partition"] = cert->partition;
        json spans = json::array();
        for (const auto& coefs : cert->span_coefficients) {
            json row = json::array();
            for (const auto& q : coefs) row.push_back(q.str());
            spans.push_back(std::move(row));
        }
        c["span_coefficients"] = std::move(spans);
        res["certificate"] = std::move(c);
    } else {
        res["certificate"] = nullptr;
    }
    r["result"] = std::move(res);
    emit_report(r, t0, out);
    return cert ? 0 : 1;
}

int cmd_check_subtracted(const SubtractedParams& p, std::ostream& out) {
    auto t0 = Clock::now();
    Matrix a = load_matrix_file(p.matrix);
    RemainderEvidence evidence = FirstEntriesEvidence{};
    if (!p.m_matrix.empty())
        evidence = DeclaredMatrixEvidence{load_matrix_file(p.m_matrix)};
    else if (p.rem_n > 0)
        evidence = VerifySpec{p.rem_n, p.rem_r, p.rem_xmax};
    std::optional<VerifySpec> also;
    if (p.fin_n > 0) also = VerifySpec{p.fin_n, p.fin_r, p.fin_xmax};

    SubtractedReport rep = validate_subtracted(a, static_cast<std::size_t>(p.offset),
                                               static_cast<std::size_t>(p.width), evidence, also);
    json inputs = {{"matrix", p.matrix}, {"n", p.offset}, {"k", p.width}};
    if (!p.m_matrix.empty()) inputs["m_matrix"] = p.m_matrix;
    json r = report_skeleton("check subtracted", std::move(inputs), 1);
    json res;
    res["satisfied"] = rep.passed();
    json detail;
    detail["no_zero_row"] = rep.no_zero_row;
    detail["finite_part_ok"] = rep.finite_part_ok;
    detail["finite_part_first_entries"] = first_entries_json(rep.finite_part_first_entries);
    if (rep.finite_part_forced) detail["finite_part_forced"] = *rep.finite_part_forced;
    detail["remainder_ok"] = rep.remainder_ok;
    detail["remainder_mode"] = rep.remainder_mode;
    detail["remainder_note"] = rep.remainder_note;
    detail["note"] = rep.note;
    res["report"] = std::move(detail);
    r["result"] = std::move(res);
    emit_report(r, t0, out);
    return rep.passed() ? 0 : 1;
}

int cmd_verify(const VerifyParams& p, std::ostream& out) {
    auto t0 = Clock::now();
    Matrix a = load_matrix_file(p.matrix);
    SearchOptions opts;
    opts.node_budget = p.budget;
    opts.threads = p.threads >= 1 ? p.threads : default_threads();
    if (p.deepen && p.max_n < p.n)
        throw CLI::ValidationError("--max-N must be >= --N when --deepen is given");
    Verdict v = p.deepen ? verify_ipr_deepening(a, p.n, p.max_n, p.r, p.xmax, opts)
                         : verify_ipr_finite(a, p.n, p.r, p.xmax, opts);
    if (p.as_json) {
        json inputs = {{"matrix", p.matrix}, {"N", p.n},       {"r", p.r},
                       {"xmax", p.xmax},    {"deepen", p.deepen}, {"budget", p.budget}};
        if (p.deepen) inputs["max_N"] = p.max_n;
        json r = report_skeleton("verify", std::move(inputs), opts.threads);
        r["result"] = verdict_json(v);
        emit_report(r, t0, out);
    } else {
        print_verdict_plain(v, out);
    }
    return v.kind == VerdictKind::forced ? 0 : 1;
}

int cmd_witness(const std::string& matrix_path, const std::string& coloring_path, long long xmax,
                std::ostream& out) {
    Matrix a = load_matrix_file(matrix_path);
    Coloring col = load_coloring_file(coloring_path);
    auto w = find_monochromatic_witness(a, col, xmax);
    if (!w) {
        out << "no monochromatic image within bounds\n";
        return 1;
    }
    out << "witness: " << join_ints(w->first) << '\n';
    out << "color: " << w->second << '\n';
    std::vector<long long> vals;
    for (const Rational& q : matrix_image(a, w->first)) vals.push_back(q.to_int64());
    out << "values: " << join_ints(vals) << '\n';
    return 0;
}

int cmd_export_cnf(const VerifyParams& p, const std::string& out_path, std::ostream& out,
                   std::ostream& err) {
    Matrix a = load_matrix_file(p.matrix);
    long long xm = p.xmax > 0 ? p.xmax : default_xmax(a, p.n);
    ImageEnumeration en = enumerate_images(a, p.n, xm, p.budget);
    if (!en.complete)
        err << "warning: image enumeration incomplete; the CNF is sound for UNSAT only\n";
    write_output(export_cnf(en.images, p.n, p.r), out_path, out);
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"image partition regularity toolkit"};
    app.name("ipr");
    int exit_code = 0;

    // gen ------------------------------------------------------------
    auto* gen = app.add_subcommand("gen", "generate well-known matrices");
    gen->require_subcommand(1);
    GenParams gp;

    auto* gen_schur = gen->add_subcommand("schur", "the x, y, x+y system");
    gen_schur->add_option("-o,--output", gp.out_path, "write to file instead of stdout");
    gen_schur->callback([&] { write_output(render_matrix(schur_matrix()), gp.out_path, out); });

    auto* gen_vdw = gen->add_subcommand("vdw", "length-n arithmetic progression rows (1, i)");
    gen_vdw->add_option("--n", gp.n, "progression length")->required();
    gen_vdw->add_option("-o,--output", gp.out_path, "write to file instead of stdout");
    gen_vdw->callback([&] {
        if (gp.n < 1) throw CLI::ValidationError("--n must be >= 1");
        write_output(render_matrix(vdw_matrix(static_cast<std::size_t>(gp.n))), gp.out_path, out);
    });

    for (auto [name, kind, help] :
         {std::tuple{"wmt-matrix", FamilyKind::weak_mt, "rows r with delete_zeros(r) == a"},
          std::tuple{"mt-matrix", FamilyKind::mt, "rows r with compress(r) == a"}}) {
        auto* sub = gen->add_subcommand(name, help);
        sub->add_option("--a", gp.a, "coefficient sequence, comma separated")
            ->required()
            ->delimiter(',');
        sub->add_option("--width", gp.width, "row width")->required();
        sub->add_option("--row-cap", gp.row_cap, "truncate after this many rows")->capture_default_str();
        sub->add_option("-o,--output", gp.out_path, "write to file instead of stdout");
        FamilyKind k = kind;
        sub->callback([&, k] { exit_code = cmd_gen_family(k, gp, out, err); });
    }

    // check ----------------------------------------------------------
    auto* check = app.add_subcommand("check", "structural conditions with JSON reports");
    check->require_subcommand(1);
    std::string check_path;
    SubtractedParams sp;

    auto* check_fe = check->add_subcommand("first-entries", "first-entries condition");
    check_fe->add_option("matrix", check_path, "matrix file")->required();
    check_fe->callback([&] { exit_code = cmd_check_first_entries(check_path, out); });

    auto* check_cc = check->add_subcommand("columns-condition", "Rado columns condition");
    check_cc->add_option("matrix", check_path, "matrix file")->required();
    check_cc->callback([&] { exit_code = cmd_check_columns(check_path, out); });

    auto* check_sub = check->add_subcommand("subtracted", "subtracted shape of a finite block");
    check_sub->add_option("--matrix", sp.matrix, "matrix file")->required();
    check_sub->add_option("--n", sp.offset, "first column of the finite block (0-based)")
        ->required();
    check_sub->add_option("--k", sp.width, "finite block width")->required();
    check_sub->add_option("--m-matrix", sp.m_matrix,
                          "declared remainder matrix (entry-for-entry evidence)");
    check_sub->add_option("--verify-remainder-N", sp.rem_n,
                          "check the remainder by a forced verdict at this N");
    check_sub->add_option("--verify-remainder-r", sp.rem_r, "colors for --verify-remainder-N")->capture_default_str();
    check_sub->add_option("--verify-remainder-xmax", sp.rem_xmax, "xmax for --verify-remainder-N");
    check_sub->add_option("--verify-finite-N", sp.fin_n,
                          "also demand a forced verdict on the finite block at this N");
    check_sub->add_option("--verify-finite-r", sp.fin_r, "colors for --verify-finite-N")->capture_default_str();
    check_sub->add_option("--verify-finite-xmax", sp.fin_xmax, "xmax for --verify-finite-N");
    check_sub->callback([&] {
        if (sp.width < 1) throw CLI::ValidationError("--k must be >= 1");
        if (sp.offset < 0) throw CLI::ValidationError("--n must be >= 0");
        exit_code = cmd_check_subtracted(sp, out);
    });

    // sets -----------------------------------------------------------
    auto* sets = app.add_subcommand("sets", "finite fragments of the sum/product sets");
    sets->require_subcommand(1);
    SetsParams stp;

    auto add_x = [&](CLI::App* sub) {
        sub->add_option("--x", stp.x, "sequence, comma separated")->required()->delimiter(',');
        sub->add_flag("--force", stp.force, "lift the 16-entry length limit");
    };
    auto add_ax = [&](CLI::App* sub) {
        sub->add_option("--a", stp.a, "coefficients, comma separated")->required()->delimiter(',');
        add_x(sub);
    };

    auto* sets_wmt = sets->add_subcommand("wmt", "sum_i a_i x_{t_i} over t_1 < ... < t_m");
    add_ax(sets_wmt);
    sets_wmt->callback([&] {
        for (long long v : wmt_set(CoefficientSeq(stp.a), stp.x)) out << v << '\n';
    });

    auto* sets_mt = sets->add_subcommand("mt", "sum_i a_i * blocksum over separated blocks");
    add_ax(sets_mt);
    sets_mt->callback([&] {
        for (long long v : mt_set(CoefficientSeq(stp.a), stp.x, stp.force)) out << v << '\n';
    });

    auto* sets_pmt = sets->add_subcommand("pmt", "sum_i a_i * blockproduct over separated blocks");
    add_ax(sets_pmt);
    sets_pmt->callback([&] {
        for (long long v : pmt_set(CoefficientSeq(stp.a), stp.x, stp.force)) out << v << '\n';
    });

    auto* sets_fs = sets->add_subcommand("fs", "finite sums of nonempty subsets");
    add_x(sets_fs);
    sets_fs->callback([&] {
        for (long long v : fs_set(stp.x, stp.force)) out << v << '\n';
    });

    auto* sets_fp = sets->add_subcommand("fp", "finite products of nonempty subsets");
    add_x(sets_fp);
    sets_fp->callback([&] {
        for (long long v : fp_set(stp.x, stp.force)) out << v << '\n';
    });

    auto* sets_sub = sets->add_subcommand("subsystem", "blockwise sums or products of x");
    sets_sub->add_option("--kind", stp.kind, "sum or product")
        ->required()
        ->check(CLI::IsMember({"sum", "product"}));
    sets_sub->add_option("--x", stp.x, "sequence, comma separated")->required()->delimiter(',');
    sets_sub->add_option("--blocks", stp.blocks, "1-based blocks, e.g. 1,2;3,5")->required();
    sets_sub->callback([&] {
        BlockSystem blocks(parse_blocks(stp.blocks));
        IntSeq y = stp.kind == "sum" ? sum_subsystem(stp.x, blocks)
                                     : product_subsystem(stp.x, blocks);
        for (long long v : y) out << v << '\n';
    });

    // verify / witness / export-cnf -----------------------------------
    VerifyParams vp;
    auto* verify = app.add_subcommand("verify", "finite coloring search at (N, r, xmax)");
    verify->add_option("--matrix", vp.matrix, "matrix file")->required();
    verify->add_option("--N", vp.n, "color 1..N")->required();
    verify->add_option("--r", vp.r, "number of colors")->required();
    verify->add_option("--xmax", vp.xmax, "variable cap (default: derived from N)");
    verify->add_flag("--deepen", vp.deepen, "increase N until forced or --max-N");
    verify->add_option("--max-N", vp.max_n, "stop deepening here");
    verify->add_option("--budget", vp.budget, "image enumeration node budget")->capture_default_str();
    verify->add_option("--threads", vp.threads, "coloring search threads (default: IPR_THREADS or 1)");
    verify->add_flag("--json", vp.as_json, "machine-readable report");
    verify->callback([&] { exit_code = cmd_verify(vp, out); });

    std::string witness_matrix, witness_coloring;
    long long witness_xmax = 0;
    auto* witness = app.add_subcommand("witness", "first monochromatic image under a coloring");
    witness->add_option("--matrix", witness_matrix, "matrix file")->required();
    witness->add_option("--coloring", witness_coloring, "coloring file")->required();
    witness->add_option("--xmax", witness_xmax, "variable cap (default: derived from N)");
    witness->callback(
        [&] { exit_code = cmd_witness(witness_matrix, witness_coloring, witness_xmax, out); });

    VerifyParams cp;
    std::string cnf_out;
    auto* cnf = app.add_subcommand("export-cnf", "avoiding colorings as a DIMACS instance");
    cnf->add_option("--matrix", cp.matrix, "matrix file")->required();
    cnf->add_option("--N", cp.n, "color 1..N")->required();
    cnf->add_option("--r", cp.r, "number of colors")->required();
    cnf->add_option("--xmax", cp.xmax, "variable cap (default: derived from N)");
    cnf->add_option("--budget", cp.budget, "image enumeration node budget")->capture_default_str();
    cnf->add_option("-o,--output", cnf_out, "output file")->required();
    cnf->callback([&] { exit_code = cmd_export_cnf(cp, cnf_out, out, err); });

    // diagsum / seq ----------------------------------------------------
    std::vector<std::string> diag_files;
    std::string diag_out;
    auto* diag = app.add_subcommand("diagsum", "block-diagonal combination of matrices");
    diag->add_option("files", diag_files, "matrix files, in block order")
        ->required()
        ->expected(-1);
    diag->add_option("-o,--output", diag_out, "write to file instead of stdout");
    diag->callback([&] {
        std::vector<Matrix> blocks;
        blocks.reserve(diag_files.size());
        for (const auto& f : diag_files) blocks.push_back(load_matrix_file(f));
        write_output(render_matrix(diagonal_sum(blocks)), diag_out, out);
    });

    auto* seq = app.add_subcommand("seq", "sequence operators");
    seq->require_subcommand(1);
    std::vector<long long> seq_in;
    for (auto [name, help] : {std::pair{"delete-zeros", "drop zero entries"},
                              std::pair{"compress", "drop zeros, collapse equal runs"}}) {
        auto* sub = seq->add_subcommand(name, help);
        sub->add_option("ints", seq_in, "sequence entries")->expected(-1);
        std::string op = name;
        sub->callback([&, op] {
            IntSeq r = op == "compress" ? compress(seq_in) : delete_zeros(seq_in);
            out << join_ints(r) << '\n';
        });
    }
    auto* seq_isc = seq->add_subcommand("is-compressed", "check compress(x) == x");
    seq_isc->add_option("ints", seq_in, "sequence entries")->expected(-1);
    seq_isc->callback([&] {
        bool ok = is_compressed(seq_in);
        out << (ok ? "true" : "false") << '\n';
        exit_code = ok ? 0 : 1;
    });

    app.require_subcommand(1);

    // Negative integers would otherwise parse as unknown options.
    std::vector<std::string> argv = args;
    if (!argv.empty() && argv[0] == "seq" && argv.size() > 1 &&
        std::find(argv.begin(), argv.end(), "--") == argv.end())
        argv.insert(argv.begin() + 2, "--");

    std::vector<const char*> cargv;
    cargv.push_back("ipr");
    for (const auto& s : argv) cargv.push_back(s.c_str());
    try {
        app.parse(static_cast<int>(cargv.size()), cargv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err) == 0 ? 0 : 2;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return exit_code;
}

}  // namespace ipr::cli
