// Command-line front end: compiles weighted bases, evaluates bipolar
// queries, conditions them, stratifies comparative rule bases, synthesizes
// network joints and ranks diagnostic causes. Outputs are byte-stable given
// identical inputs.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "biposs/biposs.hpp"

namespace {

// exit codes shared by all subcommands
constexpr int kOk = 0;
constexpr int kParseError = 2;
constexpr int kValidationError = 3;
constexpr int kInconsistent = 4;
constexpr int kLimitExceeded = 5;

struct Options {
    std::string format = "tsv";
    std::size_t max_vars = biposs::kDefaultMaxVariables;
    bool check_eq6 = false;
};

void add_common(CLI::App* cmd, Options& opt) {
    cmd->add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"tsv", "json"}))
        ->capture_default_str();
    cmd->add_option("--max-vars", opt.max_vars, "variable limit")
        ->check(CLI::Range(std::size_t{1}, std::size_t{20}))
        ->capture_default_str();
}

std::ifstream open_or_fail(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw biposs::ParseError(path + ": cannot open file", 0, 0);
    return in;
}

biposs::io::BaseFile load_bases(const std::vector<std::string>& paths, std::size_t max_vars) {
    std::optional<biposs::io::BaseFile> merged;
    for (const auto& path : paths) {
        std::ifstream in = open_or_fail(path);
        biposs::io::BaseFile one = biposs::io::parse_base_file(in, path, max_vars);
        if (!merged) {
            merged = std::move(one);
        } else {
            if (!(merged->vars == one.vars))
                throw biposs::ParseError(path + ": variable declaration differs from '" +
                                             paths.front() + "'",
                                         0, 0);
            for (const auto& e : one.sigma.entries()) merged->sigma.add(e.formula, e.weight);
            for (const auto& e : one.xi.entries()) merged->xi.add(e.formula, e.weight);
        }
    }
    return *merged;
}

void print_json(const biposs::io::ordered_json& j) { std::cout << j.dump(2) << '\n'; }

void report_violations(const biposs::VariableTable& vars,
                       const std::vector<std::size_t>& violations,
                       const biposs::PossibilityDistribution& lower,
                       const biposs::PossibilityDistribution& upper, std::ostream& os) {
    os << "consistency violated at " << violations.size() << " interpretation(s):\n";
    for (const std::size_t w : violations)
        os << "  " << vars.world_label(static_cast<biposs::World>(w)) << ": lower "
           << lower.at(w).str() << " > upper " << upper.at(w).str() << '\n';
}

int run_compile(const std::vector<std::string>& paths, const Options& opt) {
    const auto base = load_bases(paths, opt.max_vars);
    const auto lower = biposs::compile_lower(base.xi);
    const auto upper = biposs::compile_upper(base.sigma);

    if (opt.format == "tsv")
        biposs::io::write_pair_tsv(std::cout, base.vars, lower, upper);
    else
        print_json(biposs::io::pair_json(base.vars, lower, upper));

    if (!upper.is_normalized())
        std::cerr << "warning: necessity base is inconsistent (sup of upper distribution is "
                  << upper.sup().str() << ")\n";
    if (opt.check_eq6) {
        const auto violations = biposs::consistency_violations(lower, upper);
        if (violations.empty()) {
            const auto eq6 = biposs::check_eq6(biposs::BipolarPair(lower, upper));
            std::cerr << "eq6 preconditions: upper normalized = "
                      << (eq6.upper_normalized ? "yes" : "no")
                      << ", lower vanishes = " << (eq6.lower_vanishes ? "yes" : "no")
                      << (eq6.applicable() ? "; bound holds" : "; bound not applicable") << '\n';
        }
    }
    const auto violations = biposs::consistency_violations(lower, upper);
    if (!violations.empty()) {
        report_violations(base.vars, violations, lower, upper, std::cerr);
        return kInconsistent;
    }
    return kOk;
}

int run_query(const std::vector<std::string>& paths, const std::string& formula,
              const Options& opt) {
    const auto base = load_bases(paths, opt.max_vars);
    const auto result = biposs::make_bipolar_pair(base.sigma, base.xi);
    if (!result.ok()) {
        report_violations(base.vars, result.violations, biposs::compile_lower(base.xi),
                          biposs::compile_upper(base.sigma), std::cerr);
        return kInconsistent;
    }
    const biposs::Event a = biposs::models(biposs::parse_formula(formula, base.vars), base.vars);
    const biposs::BipolarValue bv = result.pair->eval(a);
    const biposs::DualValue dv = result.pair->eval_dual(a);
    const std::vector<std::string> names{"guaranteed", "possibility", "necessity", "potential"};
    const std::vector<biposs::Degree> values{bv.guaranteed, bv.possibility, dv.necessity,
                                             dv.potential};
    if (opt.format == "tsv")
        biposs::io::write_values_tsv(std::cout, names, values);
    else
        print_json(biposs::io::values_json(names, values));
    return kOk;
}

int run_condition(const std::vector<std::string>& paths, const std::string& evidence,
                  const std::string& hypothesis, const Options& opt) {
    const auto base = load_bases(paths, opt.max_vars);
    const auto result = biposs::make_bipolar_pair(base.sigma, base.xi);
    if (!result.ok()) {
        report_violations(base.vars, result.violations, biposs::compile_lower(base.xi),
                          biposs::compile_upper(base.sigma), std::cerr);
        return kInconsistent;
    }
    const biposs::Event a = biposs::models(biposs::parse_formula(evidence, base.vars), base.vars);
    const biposs::Event b =
        biposs::models(biposs::parse_formula(hypothesis, base.vars), base.vars);
    if (a.empty()) {
        std::cerr << "error: evidence formula has no models\n";
        return kValidationError;
    }
    const biposs::BipolarValue bv = biposs::cond_bipolar(*result.pair, a, b);
    const biposs::Degree n = biposs::cond_necessity(result.pair->upper(), a, b);
    const biposs::Degree nabla =
        biposs::cond_guaranteed(result.pair->lower(), a, b.complement()).complement();
    const std::vector<std::string> names{"guaranteed", "possibility", "necessity", "potential"};
    const std::vector<biposs::Degree> values{bv.guaranteed, bv.possibility, n, nabla};
    if (opt.format == "tsv")
        biposs::io::write_values_tsv(std::cout, names, values);
    else
        print_json(biposs::io::values_json(names, values));
    return kOk;
}

int report_wop_failure(const biposs::io::RulesFile& rules, const biposs::WopResult& result,
                       const char* side) {
    std::cerr << "error: " << side << " rule base is inconsistent; blocking rules:\n";
    for (const std::size_t i : result.blocking) {
        const auto& r = rules.rules[i];
        const char* arrow = r.kind == biposs::RuleKind::Pi ? " -> " : " ~> ";
        std::cerr << "  " << biposs::print_formula(r.context, rules.vars) << arrow
                  << biposs::print_formula(r.conclusion, rules.vars) << '\n';
    }
    return kInconsistent;
}

int run_wop(const std::string& path, const Options& opt) {
    std::ifstream in = open_or_fail(path);
    const auto rules = biposs::io::parse_rules_file(in, path, opt.max_vars);
    std::vector<biposs::ComparativeRule> pi_rules;
    std::vector<biposs::ComparativeRule> delta_rules;
    for (const auto& r : rules.rules)
        (r.kind == biposs::RuleKind::Pi ? pi_rules : delta_rules).push_back(r);

    std::optional<biposs::WopResult> upper;
    std::optional<biposs::WopResult> lower;
    if (!pi_rules.empty() || delta_rules.empty()) {
        upper = biposs::wop_upper(rules.vars, pi_rules);
        if (!upper->consistent) return report_wop_failure(rules, *upper, "upper");
    }
    if (!delta_rules.empty()) {
        lower = biposs::wop_lower(rules.vars, delta_rules);
        if (!lower->consistent) return report_wop_failure(rules, *lower, "lower");
    }

    biposs::io::ordered_json j;
    if (upper) {
        if (opt.format == "tsv") {
            std::cout << "upper:\n";
            biposs::io::write_wop_text(std::cout, rules.vars, upper->partition);
        } else {
            j["upper"] = biposs::io::wop_json(rules.vars, upper->partition);
        }
    }
    if (lower) {
        if (opt.format == "tsv") {
            std::cout << "lower:\n";
            biposs::io::write_wop_text(std::cout, rules.vars, lower->partition);
        } else {
            j["lower"] = biposs::io::wop_json(rules.vars, lower->partition);
        }
    }
    if (opt.format == "json") print_json(j);

    if (upper && lower) {
        const auto du = biposs::wop_to_distribution(upper->partition);
        const auto dl = biposs::wop_to_distribution(lower->partition);
        const auto violations = biposs::consistency_violations(dl, du);
        if (!violations.empty()) {
            report_violations(rules.vars, violations, dl, du, std::cerr);
            return kInconsistent;
        }
    }
    return kOk;
}

int run_net(const std::string& path, const std::string& mode, const Options& opt) {
    std::ifstream in = open_or_fail(path);
    const auto net = biposs::io::parse_network_file(in, path, opt.max_vars);
    const auto report = biposs::validate(net);
    if (!report.ok()) {
        for (const auto& issue : report.issues) {
            std::cout << issue.node;
            if (!issue.context.empty()) std::cout << " | " << issue.context;
            std::cout << ": " << issue.message << '\n';
        }
        return kValidationError;
    }
    const auto vars = net.variable_table();
    const auto jr = biposs::joint(net);

    if (mode == "check") {
        if (!jr.violations.empty()) {
            report_violations(vars, jr.violations, jr.lower_raw, jr.upper, std::cout);
            for (const auto& gap : biposs::revised_local_bound_gaps(net))
                std::cout << "note: after revision, " << gap.node << " | " << gap.context
                          << (gap.value ? "" : " (negated)") << " no longer bounds: entry "
                          << gap.entry.str() << ", achieved " << gap.achieved.str() << '\n';
            return kInconsistent;
        }
        std::cout << "ok\n";
        return kOk;
    }

    const auto& lower = mode == "raw" ? jr.lower_raw : jr.lower_revised;
    if (opt.format == "tsv")
        biposs::io::write_pair_tsv(std::cout, vars, lower, jr.upper);
    else
        print_json(biposs::io::pair_json(vars, lower, jr.upper));
    if (!jr.violations.empty()) {
        report_violations(vars, jr.violations, jr.lower_raw, jr.upper, std::cerr);
        if (mode == "raw") return kInconsistent;
        std::cerr << "note: lower table above is the revised one; the raw lower joint "
                     "violates consistency\n";
    }
    return kOk;
}

int run_diagnose(const std::string& model_path, const std::string& obs_path,
                 const Options& opt) {
    std::ifstream min = open_or_fail(model_path);
    const auto model = biposs::io::parse_model_file(min, model_path);
    std::ifstream oin = open_or_fail(obs_path);
    const auto obs = biposs::io::parse_observation_file(oin, obs_path, model);

    bool coherent = true;
    for (const auto& cause : model.causes)
        for (const auto& issue : biposs::profile_coherence_issues(cause)) {
            std::cerr << "error: cause '" << cause.name << "' " << issue << '\n';
            coherent = false;
        }
    if (!coherent) return kValidationError;
    if (obs.attributes.empty()) {
        std::cerr << "error: no observed attributes in '" << obs_path << "'\n";
        return kValidationError;
    }

    const auto scores = biposs::rank_causes(model.causes, obs);
    if (opt.format == "tsv")
        biposs::io::write_scores_tsv(std::cout, scores);
    else
        print_json(biposs::io::scores_json(scores));
    return kOk;
}

std::string detect_type(const std::string& path) {
    std::ifstream in = open_or_fail(path);
    const auto lines = biposs::io::detail::content_lines(in);
    if (lines.empty()) return "base";
    const std::string& first = lines.front().second;
    if (first.starts_with("node")) return "net";
    if (first.starts_with("attribute") || first.starts_with("cause")) return "model";
    if (first.starts_with("vars:")) {
        for (std::size_t i = 1; i < lines.size(); ++i) {
            const std::string& s = lines[i].second;
            if (s.starts_with("PI:") || s.starts_with("GD:")) return "rules";
            if (s.starts_with("N:") || s.starts_with("D:")) return "base";
        }
        return "base";
    }
    return "base";
}

int run_check(const std::string& path, std::string type, const Options& opt) {
    if (type == "auto") type = detect_type(path);
    std::ifstream in = open_or_fail(path);

    if (type == "base") {
        const auto base = biposs::io::parse_base_file(in, path, opt.max_vars);
        const auto lower = biposs::compile_lower(base.xi);
        const auto upper = biposs::compile_upper(base.sigma);
        if (!upper.is_normalized())
            std::cout << "note: necessity base is inconsistent (sup of upper distribution is "
                      << upper.sup().str() << ")\n";
        const auto violations = biposs::consistency_violations(lower, upper);
        if (!violations.empty()) {
            report_violations(base.vars, violations, lower, upper, std::cout);
            return kInconsistent;
        }
        if (opt.check_eq6) {
            const auto eq6 = biposs::check_eq6(biposs::BipolarPair(lower, upper));
            std::cout << "eq6 preconditions: upper normalized = "
                      << (eq6.upper_normalized ? "yes" : "no")
                      << ", lower vanishes = " << (eq6.lower_vanishes ? "yes" : "no")
                      << (eq6.applicable() ? "; bound holds" : "; bound not applicable") << '\n';
        }
        std::cout << "ok\n";
        return kOk;
    }
    if (type == "rules") {
        const auto rules = biposs::io::parse_rules_file(in, path, opt.max_vars);
        std::vector<biposs::ComparativeRule> pi_rules;
        std::vector<biposs::ComparativeRule> delta_rules;
        for (const auto& r : rules.rules)
            (r.kind == biposs::RuleKind::Pi ? pi_rules : delta_rules).push_back(r);
        const auto upper = biposs::wop_upper(rules.vars, pi_rules);
        if (!upper.consistent) return report_wop_failure(rules, upper, "upper");
        if (!delta_rules.empty()) {
            const auto lower = biposs::wop_lower(rules.vars, delta_rules);
            if (!lower.consistent) return report_wop_failure(rules, lower, "lower");
        }
        std::cout << "ok\n";
        return kOk;
    }
    if (type == "net") {
        in.close();
        return run_net(path, "check", opt);
    }
    // model
    const auto model = biposs::io::parse_model_file(in, path);
    bool coherent = true;
    for (const auto& cause : model.causes)
        for (const auto& issue : biposs::profile_coherence_issues(cause)) {
            std::cout << "cause '" << cause.name << "' " << issue << '\n';
            coherent = false;
        }
    if (!coherent) return kValidationError;
    std::cout << "ok\n";
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bipolar possibilistic representations toolkit"};
    app.require_subcommand(1);

    Options opt;

    std::vector<std::string> base_paths;
    std::string formula;
    std::string evidence;
    std::string hypothesis;
    std::string rules_path;
    std::string net_path;
    std::string net_mode = "raw";
    std::string model_path;
    std::string obs_path;
    std::string check_path;
    std::string check_type = "auto";

    CLI::App* compile = app.add_subcommand("compile", "compile weighted bases into a pair of distributions");
    compile->add_option("files", base_paths, "base files (N:/D: entries)")->required();
    compile->add_flag("--check-eq6", opt.check_eq6, "report the eq-6 precondition status");
    add_common(compile, opt);

    CLI::App* query = app.add_subcommand("query", "evaluate a formula against a compiled pair");
    query->add_option("files", base_paths, "base files")->required();
    query->add_option("--formula", formula, "query formula")->required();
    add_common(query, opt);

    CLI::App* condition = app.add_subcommand("condition", "conditional values given evidence");
    condition->add_option("files", base_paths, "base files")->required();
    condition->add_option("--evidence", evidence, "evidence formula")->required();
    condition->add_option("--hypothesis", hypothesis, "hypothesis formula")->required();
    add_common(condition, opt);

    CLI::App* wop = app.add_subcommand("wop", "stratify a comparative rule base");
    wop->add_option("file", rules_path, "rules file (PI:/GD: lines)")->required();
    add_common(wop, opt);

    CLI::App* net = app.add_subcommand("net", "joint distributions of a bipolar network");
    net->add_option("file", net_path, "network file")->required();
    net->add_option("--mode", net_mode, "raw|revised|check")
        ->check(CLI::IsMember({"raw", "revised", "check"}))
        ->capture_default_str();
    add_common(net, opt);

    CLI::App* diagnose = app.add_subcommand("diagnose", "rank causes against observations");
    diagnose->add_option("--model", model_path, "cause model file")->required();
    diagnose->add_option("--obs", obs_path, "observation file")->required();
    add_common(diagnose, opt);

    CLI::App* check = app.add_subcommand("check", "validate an input file");
    check->add_option("file", check_path, "input file")->required();
    check->add_option("--type", check_type, "base|rules|net|model|auto")
        ->check(CLI::IsMember({"base", "rules", "net", "model", "auto"}))
        ->capture_default_str();
    check->add_flag("--check-eq6", opt.check_eq6, "report the eq-6 precondition status");
    add_common(check, opt);

    CLI11_PARSE(app, argc, argv);

    try {
        if (compile->parsed()) return run_compile(base_paths, opt);
        if (query->parsed()) return run_query(base_paths, formula, opt);
        if (condition->parsed()) return run_condition(base_paths, evidence, hypothesis, opt);
        if (wop->parsed()) return run_wop(rules_path, opt);
        if (net->parsed()) return run_net(net_path, net_mode, opt);
        if (diagnose->parsed()) return run_diagnose(model_path, obs_path, opt);
        if (check->parsed()) return run_check(check_path, check_type, opt);
    } catch (const biposs::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kParseError;
    } catch (const biposs::LimitError& e) {
        std::cerr << "limit error: " << e.what() << '\n';
        return kLimitExceeded;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kValidationError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return kOk;
}
