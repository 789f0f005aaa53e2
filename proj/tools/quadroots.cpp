// quadroots: command-line front end for the contour root engine.
//
//   quadroots solve --coeffs "1,0,-1"
//   quadroots solve --input poly.json --with-oracle --format json
//
// Exit codes: 0 success, 1 input error, 2 solver failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cctype>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "quadroots/certificate.hpp"
#include "quadroots/oracle.hpp"
#include "quadroots/solver.hpp"

using json = nlohmann::json;
using namespace quadroots;

namespace {

struct InputError : std::runtime_error {
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

std::string strip(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_real(const std::string& tok) {
    size_t used = 0;
    double v;
    try {
        v = std::stod(tok, &used);
    } catch (const std::exception&) {
        throw InputError("cannot parse number '" + tok + "'");
    }
    if (used != tok.size()) throw InputError("trailing characters in number '" + tok + "'");
    return v;
}

// Accepted forms: "1.5", "-2+3i", "4i", "i", "-i", "2-i", "1e-3+2.5i".
Complex parse_complex(const std::string& raw) {
    const std::string tok = strip(raw);
    if (tok.empty()) throw InputError("empty coefficient");

    if (tok.back() == 'i' || tok.back() == 'I') {
        std::string body = tok.substr(0, tok.size() - 1);
        // find the split between real and imaginary parts: a sign not at the
        // start and not part of an exponent
        size_t split = std::string::npos;
        for (size_t i = 1; i < body.size(); ++i) {
            if ((body[i] == '+' || body[i] == '-') &&
                body[i - 1] != 'e' && body[i - 1] != 'E')
                split = i;
        }
        if (split == std::string::npos) {
            if (body.empty() || body == "+") return Complex(0, 1);
            if (body == "-") return Complex(0, -1);
            return Complex(0, parse_real(body));
        }
        const std::string re = body.substr(0, split);
        std::string im = body.substr(split);
        if (im == "+") im = "1";
        if (im == "-") im = "-1";
        return Complex(parse_real(re), parse_real(im));
    }
    return Complex(parse_real(tok), 0.0);
}

std::vector<Complex> parse_coeff_list(const std::string& text) {
    std::vector<Complex> coeffs;
    size_t start = 0;
    while (start <= text.size()) {
        const size_t comma = text.find(',', start);
        const std::string tok =
            text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (!strip(tok).empty()) coeffs.push_back(parse_complex(tok));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (coeffs.empty()) throw InputError("no coefficients given");
    return coeffs;
}

std::vector<Complex> read_input_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open input file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw InputError(std::string("invalid JSON input: ") + e.what());
    }
    if (!j.contains("coefficients") || !j["coefficients"].is_array())
        throw InputError("input JSON must contain a 'coefficients' array");
    std::vector<Complex> coeffs;
    for (const auto& item : j["coefficients"]) {
        if (item.is_array() && item.size() == 2 && item[0].is_number() && item[1].is_number())
            coeffs.emplace_back(item[0].get<double>(), item[1].get<double>());
        else if (item.is_number())
            coeffs.emplace_back(item.get<double>(), 0.0);
        else
            throw InputError("coefficients must be [re, im] pairs or numbers");
    }
    if (coeffs.empty()) throw InputError("empty coefficient list");
    return coeffs;
}

json root_to_json(const RootReport& r) {
    const Complex reported = r.polished.value_or(r.root);
    json out{{"re", reported.real()},
             {"im", reported.imag()},
             {"multiplicity", r.multiplicity},
             {"residual", r.residual},
             {"branch", r.branch},
             {"raw_re", r.root.real()},
             {"raw_im", r.root.imag()}};
    if (r.flagged) out["flag"] = r.flag_reason;
    return out;
}

json certificate_to_json(const CertificateReport& rep) {
    json arcs = json::object();
    for (const auto& arc : rep.arcs) arcs[arc.arc] = arc.max_ratio;
    return json{{"alpha", rep.params.alpha},
                {"beta", rep.params.beta},
                {"epsilon", rep.params.epsilon},
                {"R", rep.params.R},
                {"max_ratios", arcs},
                {"pass", rep.pass}};
}

std::string to_csv(const SolveResult& res) {
    std::ostringstream out;
    out.precision(17);
    for (const RootReport& r : res.reports) {
        const Complex reported = r.polished.value_or(r.root);
        out << reported.real() << ',' << reported.imag() << ',' << r.multiplicity << ','
            << r.residual << '\n';
    }
    return out.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"polynomial roots via contour integrals of the shifted branch functions"};
    app.require_subcommand(1);

    CLI::App* solve = app.add_subcommand("solve", "compute all roots of a polynomial");
    std::string coeffs_text, input_path, output_path, format = "json";
    bool raw = false, with_oracle = false, with_certificate = false;
    SolverConfig config;
    double newton_tol = config.newton_tol, quad_tol = config.quad_tol;
    std::optional<double> shift_override;
    double shift_value = 0.0;

    auto* coeffs_opt =
        solve->add_option("--coeffs", coeffs_text,
                          "comma-separated coefficients, leading first (e.g. \"1,0,-2+3i\")");
    auto* input_opt = solve->add_option("--input", input_path,
                                        "JSON file with a 'coefficients' array of [re,im] pairs");
    coeffs_opt->excludes(input_opt);
    solve->add_option("--tol", newton_tol, "Newton polish tolerance (relative)");
    solve->add_option("--quad-tol", quad_tol, "quadrature tolerance (absolute)");
    auto* shift_opt =
        solve->add_option("--shift", shift_value, "initial shift A override (still validated)");
    solve->add_flag("--raw", raw, "skip Newton polishing");
    solve->add_flag("--with-oracle", with_oracle,
                    "cross-check against the simultaneous-iteration oracle");
    solve->add_flag("--certificate", with_certificate,
                    "attach the sampled comparison-function certificate");
    solve->add_option("--format", format, "output format: json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
    solve->add_option("--output", output_path, "write output to a file instead of stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        std::vector<Complex> coeffs;
        if (coeffs_opt->count())
            coeffs = parse_coeff_list(coeffs_text);
        else if (input_opt->count())
            coeffs = read_input_file(input_path);
        else
            throw InputError("one of --coeffs or --input is required");

        Polynomial p(std::move(coeffs));
        if (std::abs(p.leading()) == 0.0) throw InputError("leading coefficient is zero");
        if (p.degree() < 1) throw InputError("polynomial must have degree >= 1");

        config.newton_tol = newton_tol;
        config.quad_tol = quad_tol;
        config.polish = !raw;
        if (shift_opt->count()) config.initial_shift = shift_value;

        SolveResult res;
        try {
            res = solve_all(p, config);
        } catch (const SolverError& e) {
            std::cerr << "solver failure: " << e.what() << "\n";
            return 2;
        }

        std::string payload;
        if (format == "csv") {
            payload = to_csv(res);
        } else {
            json diagnostics{{"escalations", res.escalations},
                             {"Z", res.Z},
                             {"zero_multiplicity", res.zero_multiplicity},
                             {"leading_coefficient",
                              {res.leading_coefficient.real(), res.leading_coefficient.imag()}},
                             {"branch_roots_distinct", res.branch_roots_distinct},
                             {"total_multiplicity", res.total_multiplicity},
                             {"polished", config.polish}};
            json out{{"degree", res.degree},
                     {"shift_A", res.A},
                     {"roots", json::array()},
                     {"diagnostics", diagnostics}};
            for (const RootReport& r : res.reports) out["roots"].push_back(root_to_json(r));

            if (with_oracle) {
                auto dk = durand_kerner(monic(p));
                std::vector<Complex> reported;
                for (const RootReport& r : res.reports)
                    for (int m = 0; m < r.multiplicity; ++m)
                        reported.push_back(r.polished.value_or(r.root));
                const RootMatch match = match_root_sets(reported, dk.roots);
                out["oracle_max_distance"] = match.max_distance;
                out["diagnostics"]["oracle_converged"] = dk.converged;
                out["diagnostics"]["oracle_unmatched"] = match.unmatched_a + match.unmatched_b;
            }
            if (with_certificate && res.problem) {
                const CertificateParams params = select_parameters(*res.problem);
                out["certificate"] = certificate_to_json(
                    verify_certificate(*res.problem, params, 256));
            }
            payload = out.dump(2) + "\n";
        }

        if (!output_path.empty()) {
            std::ofstream of(output_path);
            if (!of) throw InputError("cannot open output file '" + output_path + "'");
            of << payload;
        } else {
            std::cout << payload;
        }
        return 0;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const SolverError& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return 2;
    }
}
