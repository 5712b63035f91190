#include "mzv/verify.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <set>

#include <json.hpp>

#include "mzv/reductions.hpp"

namespace mzv {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string short_num(const MPReal& x) { return x.is_zero() ? "0" : x.to_string(3); }

}  // namespace

MPReal numeric_tolerance(int precision, std::size_t nodes) {
    const int digits = static_cast<int>(std::ceil(std::log10(static_cast<double>(std::max<std::size_t>(nodes, 1)))));
    return ten_to_minus(precision - digits - 2, 64);
}

VerifyReport verify_numeric(const Identity& id, const Bindings& b, const EvalContext& ctx) {
    VerifyReport r;
    r.id = id.id;
    r.binding = b;
    r.must_pass = !id.report_only;
    const auto t0 = Clock::now();
    try {
        bool all_exact = true;
        MPReal worst(0L, ctx.bits());
        std::size_t nodes = 0;
        for (const auto& chain : id.chains) {
            std::vector<NumValue> vals;
            for (const auto& side : chain) vals.push_back(eval_value(*side, b, ctx, &nodes));
            for (std::size_t i = 1; i < vals.size(); ++i) {
                if (vals[0].exact && vals[i].exact) {
                    const Rational d = abs(*vals[0].exact - *vals[i].exact);
                    const MPReal dm(d, ctx.bits());
                    if (worst < dm) worst = dm;
                } else {
                    all_exact = false;
                    const MPReal d = abs(vals[0].approx - vals[i].approx);
                    if (worst < d) worst = d;
                }
            }
        }
        r.nodes = nodes;
        r.residual = worst;
        if (all_exact) {
            r.mode = "exact";
            r.tolerance = MPReal(0L, 64);
            r.pass = worst.is_zero();
        } else {
            r.mode = "numeric";
            r.tolerance = numeric_tolerance(ctx.target_digits(), nodes);
            r.pass = worst <= r.tolerance;
        }
    } catch (const std::exception& e) {
        r.mode = "error";
        r.error = e.what();
        r.pass = false;
    }
    r.seconds = since(t0);
    return r;
}

VerifyReport verify_symbolic(const Identity& id, const Bindings& b) {
    VerifyReport r;
    r.id = id.id;
    r.binding = b;
    r.must_pass = !id.report_only;
    r.mode = "symbolic";
    const auto t0 = Clock::now();
    try {
        bool equal = true;
        for (const auto& chain : id.chains) {
            const ConstExpr first = reduce_ast(*chain[0], b);
            for (std::size_t i = 1; i < chain.size(); ++i)
                if (!(reduce_ast(*chain[i], b) == first)) equal = false;
        }
        r.symbolic = equal ? "pass" : "fail";
        r.pass = equal;
    } catch (const NotReducible&) {
        r.symbolic = "numeric-only";
        r.pass = true;
    } catch (const std::exception& e) {
        r.symbolic = "fail";
        r.error = e.what();
        r.pass = false;
    }
    r.seconds = since(t0);
    return r;
}

SuiteResult run_suite(const std::vector<Identity>& corpus, const SuiteConfig& cfg) {
    SuiteResult out;
    const auto t0 = Clock::now();
    std::set<std::string> wanted;
    if (cfg.ids) wanted.insert(cfg.ids->begin(), cfg.ids->end());
    for (const auto& w : wanted) {
        bool found = false;
        for (const auto& id : corpus) found = found || id.id == w;
        if (!found) throw DomainError("unknown identity id '" + w + "'");
    }
    const EvalContext ctx(cfg.precision);
    for (const auto& id : corpus) {
        if (cfg.ids && !wanted.count(id.id)) continue;
        for (const auto& b : id.domain.enumerate(cfg.max_param)) {
            VerifyReport r = verify_numeric(id, b, ctx);
            if (cfg.symbolic) {
                VerifyReport s = verify_symbolic(id, b);
                r.symbolic = s.symbolic;
                if (s.symbolic == "fail") {
                    r.pass = false;
                    if (r.error.empty()) r.error = s.error.empty() ? "symbolic mismatch" : s.error;
                }
                r.seconds += s.seconds;
            }
            if (r.pass)
                ++out.passed;
            else if (r.must_pass)
                ++out.failed;
            else
                ++out.reported;
            out.reports.push_back(std::move(r));
        }
    }
    out.seconds = since(t0);
    return out;
}

std::string suite_json(const SuiteResult& r, const SuiteConfig& cfg, bool timestamp) {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    if (timestamp) {
        j["timestamp"] = static_cast<long long>(std::time(nullptr));
        j["seconds"] = r.seconds;
    }
    j["precision"] = cfg.precision;
    j["max_param"] = cfg.max_param;
    j["summary"] = {{"total", r.reports.size()}, {"passed", r.passed}, {"failed", r.failed}, {"reported", r.reported}};
    auto arr = nlohmann::ordered_json::array();
    for (const auto& v : r.reports) {
        nlohmann::ordered_json e;
        e["id"] = v.id;
        e["binding"] = v.binding;
        e["must_pass"] = v.must_pass;
        e["pass"] = v.pass;
        e["mode"] = v.mode;
        e["residual"] = short_num(v.residual);
        e["tolerance"] = short_num(v.tolerance);
        e["nodes"] = v.nodes;
        e["symbolic"] = v.symbolic;
        if (!v.error.empty()) e["error"] = v.error;
        if (timestamp) e["seconds"] = v.seconds;
        arr.push_back(std::move(e));
    }
    j["reports"] = std::move(arr);
    return j.dump(2) + "\n";
}

std::string suite_tsv(const SuiteResult& r) {
    std::string s = "id\tbinding\tmust_pass\tpass\tmode\tresidual\ttolerance\tsymbolic\terror\n";
    for (const auto& v : r.reports) {
        s += v.id + "\t" + render_bindings(v.binding) + "\t" + (v.must_pass ? "yes" : "no") + "\t" +
             (v.pass ? "pass" : "FAIL") + "\t" + v.mode + "\t" + short_num(v.residual) + "\t" +
             short_num(v.tolerance) + "\t" + v.symbolic + "\t" + v.error + "\n";
    }
    return s;
}

}  // namespace mzv
