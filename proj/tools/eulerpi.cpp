// eulerpi: digits of pi and of arctan(1), arctan(1/3), arctan(1/7) from
// rational alternating series, with certified error bounds.
//
// Exit codes: 0 success, 1 verification or precision failure, 2 bad arguments.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eulerpi/formulas.hpp"
#include "eulerpi/report.hpp"

namespace {

using namespace eulerpi;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct Options {
    std::size_t digits = 0;
    std::size_t max_digits = 100000;
    std::string method = "combined";
    std::string case_name;
    std::string format = "table";
    std::string fixture;
    bool json = false;
    bool inject_fault = false;
};

class Stopwatch {
public:
    std::uint64_t elapsed_ms() const {
        return static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_).count());
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

int usage_error(const std::string& message) {
    std::cerr << "error: " << message << "\n";
    return kExitUsage;
}

std::optional<PiFormulaId> parse_method(const std::string& m) {
    if (m == "case1") return PiFormulaId::Case1;
    if (m == "combined") return PiFormulaId::Combined;
    if (m == "machin") return PiFormulaId::MachinOracle;
    return std::nullopt;
}

std::optional<CaseId> parse_case(const std::string& c) {
    if (c == "1") return CaseId::X1;
    if (c == "1/2") return CaseId::XHalf;
    if (c == "1/4") return CaseId::XQuarter;
    return std::nullopt;
}

OutputReport make_report(std::string method, std::size_t digits, const EvalResult& r, std::string value,
                         const Stopwatch& clock) {
    OutputReport report;
    report.method = std::move(method);
    report.requested_digits = digits;
    report.guaranteed_digits = r.guaranteed_digits;
    report.terms_used = r.component_terms;
    report.error_ulps = r.error_ulps.to_u64();
    report.value = std::move(value);
    report.elapsed_ms = clock.elapsed_ms();
    return report;
}

void emit(const OutputReport& report, bool json) {
    if (json)
        std::cout << to_json(report).dump() << "\n";
    else
        std::cout << report.value << "\n";
}

int check_fixture(const std::string& path, const std::string& value) {
    std::ifstream in(path);
    if (!in) return usage_error("cannot read fixture " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    std::string reference;
    try {
        reference = parse_fixture(buffer.str());
    } catch (const std::invalid_argument& e) {
        return usage_error(std::string("bad fixture: ") + e.what());
    }
    if (auto at = fixture_mismatch(value, reference)) {
        std::cerr << "fixture mismatch at character " << *at << " of " << value.size() << "\n";
        return kExitFailure;
    }
    return kExitOk;
}

int cmd_pi(const Options& o) {
    if (o.digits < 1 || o.digits > o.max_digits)
        return usage_error("--digits must be between 1 and " + std::to_string(o.max_digits));
    auto method = parse_method(o.method);
    if (!method) return usage_error("unknown method '" + o.method + "' (case1, combined, machin)");

    Stopwatch clock;
    const PrecisionContext ctx = plan_pi(*method, o.digits);
    const EvalResult r = compute_pi(*method, ctx);
    std::string value = fx_to_decimal_string(r.value, r.ledger(), o.digits);
    const OutputReport report = make_report(o.method, o.digits, r, value, clock);
    emit(report, o.json);
    if (!o.fixture.empty()) return check_fixture(o.fixture, value);
    return kExitOk;
}

int cmd_arctan(const Options& o) {
    auto id = parse_case(o.case_name);
    if (!id) return usage_error("unknown case '" + o.case_name + "' (1, 1/2, 1/4)");
    if (o.digits < 1 || o.digits > o.max_digits)
        return usage_error("--digits must be between 1 and " + std::to_string(o.max_digits));

    Stopwatch clock;
    const EvalResult r = sun(*id, plan_sun(*id, o.digits));
    std::string value = fx_to_decimal_string(r.value, r.ledger(), o.digits);
    emit(make_report("arctan x=" + o.case_name, o.digits, r, std::move(value), clock), o.json);
    return kExitOk;
}

int cmd_verify(const Options& o) {
    if (o.digits < 10) return usage_error("verify needs --digits >= 10");
    FaultInjection faults;
    faults.corrupt_jupiter_coefficient = o.inject_fault;
    bool all_pass = true;
    auto line = [&](const std::string& name, bool pass, const std::string& detail) {
        all_pass = all_pass && pass;
        std::cout << (pass ? "PASS " : "FAIL ") << name << ": " << detail << "\n";
    };

    const auto fact = verify_factorization();
    std::string coeffs;
    for (auto c : fact.coefficients) coeffs += (coeffs.empty() ? "" : " ") + std::to_string(c);
    line("factorization (2+2x+x^2)(2-2x+x^2) = 4+x^4", fact.pass, "coefficients " + coeffs);

    std::vector<SeriesSpec> specs;
    for (auto f : {PiFormulaId::Case1, PiFormulaId::Combined, PiFormulaId::MachinOracle})
        for (const auto& s : evaluated_series(f)) specs.push_back(s);
    const PrecisionContext ctx = plan_context(o.digits, specs);

    const auto identity = verify_arctan_identity(ctx, faults);
    line("2 arctan(1/3) + arctan(1/7) = arctan(1)", identity.pass,
         "residual " + identity.residual_ulps.to_string() + " ulps, bound " + identity.bound_ulps.to_string()
             + " ulps at scale " + std::to_string(identity.scale));

    struct Named {
        const char* name;
        EvalResult result;
    };
    const std::vector<Named> pis = {{"case1", compute_pi(PiFormulaId::Case1, ctx, faults)},
                                    {"combined", compute_pi(PiFormulaId::Combined, ctx, faults)},
                                    {"machin", compute_pi(PiFormulaId::MachinOracle, ctx, faults)}};
    for (std::size_t i = 0; i < pis.size(); ++i) {
        for (std::size_t j = i + 1; j < pis.size(); ++j) {
            const EvalResult diff = combine({{1, pis[i].result}, {-1, pis[j].result}}, ctx.scale());
            const bool pass = diff.value.magnitude() <= diff.error_ulps;
            line(std::string("pi ") + pis[i].name + " vs " + pis[j].name, pass,
                 "difference " + diff.value.magnitude().to_string() + " ulps, bound " + diff.error_ulps.to_string()
                     + " ulps");
        }
    }
    return all_pass ? kExitOk : kExitFailure;
}

int cmd_compare(const Options& o) {
    if (o.digits < 1) return usage_error("--digits must be >= 1");
    auto format = parse_compare_format(o.format);
    if (!format) return usage_error("unknown format '" + o.format + "' (table, json, csv)");
    std::cout << render_comparison(compare_convergence(o.digits), o.digits, *format);
    return kExitOk;
}

int cmd_bench(const Options& o) {
    if (o.digits < 1 || o.digits > o.max_digits)
        return usage_error("--digits must be between 1 and " + std::to_string(o.max_digits));
    std::cout << "method    digits  scale  terms   elapsed_ms\n";
    for (auto id : {PiFormulaId::Case1, PiFormulaId::Combined, PiFormulaId::MachinOracle}) {
        Stopwatch clock;
        const PrecisionContext ctx = plan_pi(id, o.digits);
        const EvalResult r = compute_pi(id, ctx);
        char buf[128];
        std::snprintf(buf, sizeof buf, "%-9s %-7zu %-6zu %-7llu %llu\n", std::string(PiFormula::of(id).name).c_str(),
                      o.digits, ctx.scale(), static_cast<unsigned long long>(r.terms_used),
                      static_cast<unsigned long long>(clock.elapsed_ms()));
        std::cout << buf;
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Digits of pi and arctangents from rational alternating series with ratio x^4/4.\n"
                 "Digit counts are places after the decimal point; for pi the leading 3 is not counted,\n"
                 "as in the historical 'figures' convention."};
    app.require_subcommand(1);
    Options o;

    auto* pi = app.add_subcommand("pi", "compute pi");
    pi->add_option("--digits", o.digits, "decimal places")->required();
    pi->add_option("--method", o.method, "case1 | combined | machin")->capture_default_str();
    pi->add_option("--max-digits", o.max_digits, "upper limit for --digits")->capture_default_str();
    pi->add_flag("--json", o.json, "print the full report as JSON");
    pi->add_option("--fixture", o.fixture, "reference digit file to diff against");

    auto* arctan = app.add_subcommand("arctan", "compute arctan(x/(2-x)) for x = 1, 1/2, 1/4");
    arctan->add_option("--case", o.case_name, "1 | 1/2 | 1/4")->required();
    arctan->add_option("--digits", o.digits, "decimal places")->required();
    arctan->add_option("--max-digits", o.max_digits, "upper limit for --digits")->capture_default_str();
    arctan->add_flag("--json", o.json, "print the full report as JSON");

    auto* verify = app.add_subcommand("verify", "check the factorization, the arctan identity and pi cross-agreement");
    verify->add_option("--digits", o.digits, "decimal places (>= 10)")->required();
    verify->add_flag("--inject-fault", o.inject_fault, "corrupt the jupiter coefficient (test harness)")->group("");

    auto* compare = app.add_subcommand("compare", "terms needed per method for a digit target");
    compare->add_option("--digits", o.digits, "decimal places")->required();
    compare->add_option("--format", o.format, "table | json | csv")->capture_default_str();

    auto* bench = app.add_subcommand("bench", "time each pi method");
    bench->add_option("--digits", o.digits, "decimal places")->required();
    bench->add_option("--max-digits", o.max_digits, "upper limit for --digits")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (pi->parsed()) return cmd_pi(o);
        if (arctan->parsed()) return cmd_arctan(o);
        if (verify->parsed()) return cmd_verify(o);
        if (compare->parsed()) return cmd_compare(o);
        if (bench->parsed()) return cmd_bench(o);
    } catch (const InsufficientPrecision& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    } catch (const DigitStraddle& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}
