#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mzv/corpus.hpp"
#include "mzv/discovery.hpp"
#include "mzv/exact.hpp"
#include "mzv/verify.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace mzv;

enum Exit { kOk = 0, kVerifyFailed = 1, kUsage = 2, kNotReducible = 3 };

struct Options {
    int precision = 40;
    std::string corpus;
    std::string format = "text";
    std::vector<std::string> ids;
    long max_param = 10;
    bool all = false;
    bool no_timestamp = false;
    std::string report_dir = ".";
    std::vector<std::string> families;
    long height = 16;
    int degree = 2;
    std::string expr;
    unsigned index = 0;
};

std::string default_corpus() {
    if (const char* env = std::getenv("MZV_CORPUS"); env && *env) return env;
    return MZV_DEFAULT_CORPUS;
}

std::string domain_text(const Domain& d) {
    std::vector<std::string> parts;
    for (const auto& p : d.params) {
        parts.push_back(p.name + ">=" + std::to_string(p.lower));
        if (p.upper) parts.push_back(p.name + "<=" + std::to_string(*p.upper));
    }
    for (const auto& [a, b] : d.ordered) parts.push_back(a + "<=" + b);
    for (const auto& [v, par] : d.parity) parts.push_back(v + (par == 0 ? " even" : " odd"));
    std::string out;
    for (const auto& p : parts) out += (out.empty() ? "" : ", ") + p;
    return out;
}

int cmd_eval(const Options& o) {
    const ExprPtr e = parse_expression(o.expr);
    const EvalContext ctx(o.precision);
    std::size_t nodes = 0;
    const NumValue v = eval_value(*e, {}, ctx, &nodes);
    const std::string value = v.approx.to_string(o.precision);
    const std::string bound = v.exact ? "0" : numeric_tolerance(o.precision, nodes).to_string(3);
    if (o.format == "json") {
        json j;
        j["schema"] = 1;
        j["expr"] = o.expr;
        j["value"] = value;
        if (v.exact) j["exact"] = v.exact->get_str();
        j["error_bound"] = bound;
        std::cout << j.dump(2) << "\n";
    } else if (o.format == "tsv") {
        std::cout << "expr\tvalue\terror_bound\n" << o.expr << "\t" << value << "\t" << bound << "\n";
    } else {
        std::cout << value << "\n";
        if (v.exact) std::cout << "exact " << v.exact->get_str() << "\n";
        else std::cout << "error <= " << bound << "\n";
    }
    return kOk;
}

int cmd_reduce(const Options& o) {
    const ExprPtr e = parse_expression(o.expr);
    try {
        const ConstExpr r = reduce_ast(*e, {});
        if (o.format == "json") {
            json j;
            j["schema"] = 1;
            j["expr"] = o.expr;
            j["reduced"] = r.render();
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << r.render() << "\n";
        }
        return kOk;
    } catch (const NotReducible& ex) {
        std::cerr << "not reducible: " << ex.what() << "\n";
        return kNotReducible;
    }
}

int cmd_verify(const Options& o) {
    const auto corpus = load_corpus(o.corpus);
    SuiteConfig cfg;
    if (!o.all && !o.ids.empty()) cfg.ids = o.ids;
    cfg.max_param = o.max_param;
    cfg.precision = o.precision;
    const SuiteResult r = run_suite(corpus, cfg);
    const std::string js = suite_json(r, cfg, !o.no_timestamp);
    const std::string tsv = suite_tsv(r);
    if (!o.report_dir.empty()) {
        const std::filesystem::path dir(o.report_dir);
        std::filesystem::create_directories(dir);
        std::ofstream(dir / "mzv_report.json") << js;
        std::ofstream(dir / "mzv_report.tsv") << tsv;
    }
    if (o.format == "json") {
        std::cout << js;
    } else if (o.format == "tsv") {
        std::cout << tsv;
    } else {
        for (const auto& v : r.reports) {
            if (v.pass) continue;
            std::cout << (v.must_pass ? "FAIL   " : "REPORT ") << v.id << " " << render_bindings(v.binding)
                      << " residual " << v.residual.to_string(3) << " tolerance " << v.tolerance.to_string(3);
            if (!v.error.empty()) std::cout << " (" << v.error << ")";
            std::cout << "\n";
        }
        std::cout << r.reports.size() << " checks: " << r.passed << " passed, " << r.failed << " failed, "
                  << r.reported << " report-only mismatches";
        if (!o.no_timestamp) std::cout << " in " << r.seconds << " s";
        std::cout << "\n";
    }
    return r.ok() ? kOk : kVerifyFailed;
}

json candidate_json(const CandidateIdentity& c, const std::string& id) {
    json j;
    j["id"] = id;
    j["family"] = family_name(c.family);
    j["parity"] = c.even_arg ? "even-arg" : c.parity.name();
    auto params = json::array();
    for (const auto& p : c.params) params.push_back(p.get_str());
    j["params"] = params;
    j["weight"] = c.weight_text();
    j["f"] = c.f.render();
    j["status"] = certification_name(c.status);
    j["min_s"] = c.min_s;
    j["known_as"] = c.known_as;
    j["derived"] = c.derived;
    j["dsl"] = c.dsl(id);
    return j;
}

int cmd_search(const Options& o) {
    SearchConfig cfg;
    cfg.height = o.height;
    cfg.degree = o.degree;
    cfg.precision = o.precision;
    std::set<Family> fams;
    for (const auto& f : o.families) fams.insert(parse_family(f));
    if (fams.empty()) fams = cfg.families;
    std::vector<CandidateIdentity> found;
    if (fams.count(Family::Poly)) {
        found = search_poly_weights(cfg);
        fams.erase(Family::Poly);
    }
    if (!fams.empty()) {
        cfg.families = fams;
        auto general = search_general(cfg);
        found.insert(found.begin(), general.begin(), general.end());
    }

    if (o.format == "json") {
        json j;
        j["schema"] = 1;
        j["height"] = o.height;
        j["degree"] = o.degree;
        auto arr = json::array();
        for (std::size_t i = 0; i < found.size(); ++i) arr.push_back(candidate_json(found[i], "S" + std::to_string(i + 1)));
        j["candidates"] = arr;
        std::cout << j.dump(2) << "\n";
    } else if (o.format == "tsv") {
        std::cout << "id\tfamily\tparity\tweight\tf\tstatus\tknown_as\tdsl\n";
        for (std::size_t i = 0; i < found.size(); ++i) {
            const auto& c = found[i];
            const std::string id = "S" + std::to_string(i + 1);
            std::cout << id << "\t" << family_name(c.family) << "\t" << (c.even_arg ? "even-arg" : c.parity.name())
                      << "\t" << c.weight_text() << "\t" << c.f.render() << "\t" << certification_name(c.status)
                      << "\t" << c.known_as << "\t" << c.dsl(id) << "\n";
        }
    } else {
        for (std::size_t i = 0; i < found.size(); ++i) {
            const std::string id = "S" + std::to_string(i + 1);
            std::cout << "# " << found[i].summary() << "\n" << found[i].dsl(id) << "\n";
        }
        std::cout << "# " << found.size() << " candidates\n";
    }
    return kOk;
}

int cmd_corpus_list(const Options& o) {
    const auto corpus = load_corpus(o.corpus);
    if (o.format == "json") {
        json j;
        j["schema"] = 1;
        auto arr = json::array();
        for (const auto& id : corpus)
            arr.push_back({{"id", id.id}, {"report_only", id.report_only}, {"domain", domain_text(id.domain)},
                           {"chains", id.chains.size()}, {"line", id.line}});
        j["identities"] = arr;
        std::cout << j.dump(2) << "\n";
        return kOk;
    }
    const bool tsv = o.format == "tsv";
    if (tsv) std::cout << "id\texpect\tdomain\tchains\tline\n";
    for (const auto& id : corpus) {
        if (tsv) {
            std::cout << id.id << "\t" << (id.report_only ? "report" : "pass") << "\t" << domain_text(id.domain) << "\t"
                      << id.chains.size() << "\t" << id.line << "\n";
        } else {
            std::cout << id.id << (id.report_only ? " [report]" : "") << "  " << domain_text(id.domain) << "\n";
        }
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Double zeta values: evaluation, reduction, identity verification and search"};
    app.require_subcommand(1);
    Options o;
    o.corpus = default_corpus();

    app.add_option("--prec", o.precision, "target decimal digits")->check(CLI::Range(10, 100000));
    app.add_option("--corpus", o.corpus, "identity corpus (default $MZV_CORPUS)");
    app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json", "tsv"}));
    app.add_flag("--no-timestamp", o.no_timestamp, "omit timestamps and timings from reports");

    auto* eval = app.add_subcommand("eval", "evaluate an expression numerically");
    eval->add_option("expr", o.expr)->required();
    auto* reduce = app.add_subcommand("reduce", "reduce an expression to closed form");
    reduce->add_option("expr", o.expr)->required();

    auto* verify = app.add_subcommand("verify", "check corpus identities");
    verify->add_flag("--all", o.all, "every identity (default)");
    verify->add_option("--ids", o.ids, "comma-separated identity ids")->delimiter(',');
    verify->add_option("--max-param", o.max_param, "cap for every domain parameter")->check(CLI::PositiveNumber);
    verify->add_option("--report-dir", o.report_dir, "where mzv_report.json/.tsv go (empty: none)");

    auto* search = app.add_subcommand("search", "weighted double zeta sum search");
    search->add_option("--family", o.families, "power, alternating, affine, symmetric-even, poly")
        ->delimiter(',')
        ->check(CLI::IsMember({"power", "alternating", "affine", "symmetric-even", "poly"}));
    search->add_option("--height", o.height, "rational height bound")->check(CLI::Range(1L, 1000L));
    search->add_option("--deg", o.degree, "polynomial degree")->check(CLI::Range(0, 2));

    auto* bern = app.add_subcommand("bernoulli", "Bernoulli number B_n");
    bern->add_option("n", o.index)->required();
    auto* euler = app.add_subcommand("euler", "Euler number E_n");
    euler->add_option("n", o.index)->required();

    auto* corpus = app.add_subcommand("corpus", "corpus utilities");
    corpus->require_subcommand(1);
    auto* list = corpus->add_subcommand("list", "list identities");

    for (auto* sub : {eval, reduce, verify, search, bern, euler, list}) {
        sub->fallthrough();
    }
    corpus->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*eval) return cmd_eval(o);
        if (*reduce) return cmd_reduce(o);
        if (*verify) return cmd_verify(o);
        if (*search) return cmd_search(o);
        if (*bern) {
            std::cout << bernoulli(o.index).get_str() << "\n";
            return kOk;
        }
        if (*euler) {
            std::cout << euler_number(o.index).get_str() << "\n";
            return kOk;
        }
        if (*list) return cmd_corpus_list(o);
    } catch (const CorpusError& e) {
        std::cerr << "error: " << e.what() << " (line " << e.line << ", column " << e.column << ")\n";
        return kUsage;
    } catch (const NotReducible& e) {
        std::cerr << "not reducible: " << e.what() << "\n";
        return kNotReducible;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
