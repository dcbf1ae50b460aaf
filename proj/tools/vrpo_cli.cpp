#include "vrpo/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Reduced phase portraits and relative periodic orbits of point vortices"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    std::string group;
    int order = 3;

    const auto with_config = [&](CLI::App* sub) {
        sub->add_option("config", config_path, "configuration document (JSON)")->required();
        sub->add_option("--out-dir", out_dir, "output directory (overrides output.dir)");
        sub->add_option("--seed", seed, "random seed (overrides seed)");
    };
    auto* portrait = app.add_subcommand("portrait", "sample, contour and trace a reduced phase portrait");
    auto* integrate = app.add_subcommand("integrate", "integrate the full vortex system from an initial point");
    auto* verify = app.add_subcommand("verify", "run a check suite; exit 1 when a check fails");
    auto* scan = app.add_subcommand("scan", "critical-point counts over a momentum range");
    for (auto* sub : {portrait, integrate, verify, scan}) with_config(sub);
    auto* catalog = app.add_subcommand("catalog", "normalizer, orbit and fixed-space tables");
    catalog->add_option("group", group, "group name (C_i, D_n, T_h, ...) or 'all'")->required();
    catalog->add_option("--n", order, "value of a literal n index")->check(CLI::Range(2, 64));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? vrpo::kExitOk : vrpo::kExitInvalidConfig;
    }

    return vrpo::run_guarded(
        [&]() -> int {
            if (catalog->parsed()) {
                std::cout << vrpo::cmd_catalog(group, order);
                return vrpo::kExitOk;
            }
            vrpo::Overrides o;
            if (!out_dir.empty()) o.out_dir = out_dir;
            if (app.get_subcommands().front()->count("--seed")) o.seed = seed;
            const auto config = vrpo::apply_overrides(vrpo::load_config(config_path), o);
            if (portrait->parsed()) vrpo::cmd_portrait(config, std::cout);
            if (integrate->parsed()) vrpo::cmd_integrate(config, std::cout);
            if (scan->parsed()) vrpo::cmd_scan(config, std::cout);
            if (verify->parsed()) return vrpo::cmd_verify(config, std::cout);
            return vrpo::kExitOk;
        },
        std::cerr);
}
