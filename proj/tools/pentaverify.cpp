#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <pentaverify/cli.hpp>

namespace cli = pentaverify::cli;

int main(int argc, char** argv)
{
    CLI::App app{"pentaverify: exact and asymptotic checks for truncated pentagonal sums"};
    app.require_subcommand(1);

    cli::RunConfig cfg;
    std::string format = "csv";
    std::string out_path;

    auto add_output = [&](CLI::App* sub) {
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--out", out_path, "Write the table to PATH instead of stdout");
    };

    auto* seq = app.add_subcommand("seq", "Exact sequence table p, overp or pod");
    seq->add_option("family", cfg.family, "p | overp | pod")->required();
    seq->add_option("--max", cfg.max_n, "Largest index")->required();
    add_output(seq);

    auto* verify = app.add_subcommand("verify", "Exact verification suites");
    verify->require_subcommand(1);
    auto* ident = verify->add_subcommand("identities", "Generating-function identities");
    ident->add_option("--kmax", cfg.k_max, "Check k = 1..kmax")->default_val(10);
    ident->add_option("--degree", cfg.degree, "Truncation order")->default_val(200);
    add_output(ident);
    auto* orac = verify->add_subcommand("oracles", "Formula vs brute-force interpretation counts");
    orac->add_option("--family", cfg.family, "mk | mkbar | mp")->required();
    orac->add_option("--ncap", cfg.n_cap, "Check n = 1..ncap")->required();
    orac->add_option("--kmax", cfg.k_max, "Check k = 1..kmax")->default_val(4);
    add_output(orac);

    auto* ratio = app.add_subcommand("ratio", "Exact value vs asymptotic main term");
    ratio->add_option("--family", cfg.family, "mk | mkbar | mp")->required();
    ratio->add_option("--n", cfg.n_list, "Comma-separated n values")->delimiter(',')->required();
    ratio->add_option("--k", cfg.k_list, "Comma-separated k values")->delimiter(',')->required();
    ratio->add_flag("--assert-converge", cfg.assert_converge,
                    "Exit 1 unless |rel_dev| strictly decreases in n");
    add_output(ratio);

    auto* circle = app.add_subcommand("circle", "Cauchy-integral reconstruction of M_k(n)");
    circle->add_option("--n", cfg.n_list, "n values (<= 80)")->delimiter(',')->required();
    circle->add_option("--k", cfg.k_list, "k values")->delimiter(',')->required();
    circle->add_option("--tol", cfg.tol, "Quadrature relative tolerance")->default_val(1e-12);
    add_output(circle);

    auto* lemmas = app.add_subcommand("lemmas", "Major/minor arc estimates and eta inversion");
    lemmas->add_option("--n", cfg.n_list, "n values")->delimiter(',')->required();
    lemmas->add_option("--k", cfg.k_list, "k values")->delimiter(',')->required();
    lemmas->add_flag("--force", cfg.force, "Skip the k^8 <= n regime check");
    add_output(lemmas);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return cli::exit_usage;
    }

    if (seq->parsed())
        cfg.command = cli::Command::Seq;
    else if (ident->parsed())
        cfg.command = cli::Command::VerifyIdentities;
    else if (orac->parsed())
        cfg.command = cli::Command::VerifyOracles;
    else if (ratio->parsed())
        cfg.command = cli::Command::Ratio;
    else if (circle->parsed())
        cfg.command = cli::Command::Circle;
    else
        cfg.command = cli::Command::Lemmas;
    cfg.format = format == "json" ? cli::Format::Json : cli::Format::Csv;

    if (out_path.empty()) return cli::run(cfg, std::cout, std::cerr);
    std::ofstream file(out_path, std::ios::binary);
    if (!file) {
        std::cerr << "cannot open " << out_path << " for writing\n";
        return cli::exit_usage;
    }
    return cli::run(cfg, file, std::cerr);
}
