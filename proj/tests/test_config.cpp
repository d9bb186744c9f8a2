#include <doctest.h>

#include <string>

#include "mtmb/config.hpp"
#include "mtmb/errors.hpp"

using namespace mtmb;

namespace {

const char* kDisksConfig = R"(# benchmark: planted disks, desk size
domain.type = planted_disks
domain.n_situations = 4
domain.disks_per_group = 2
domain.dispersion = 0.15
domain.radius = 0.08
domain.decay_length = 0.2
domain.exclusion = 0.05
domain.cell_size = 0.1

algorithm = mtmb
budget.B = 1000
budget.init_target_elites = 8
budget.init_cap = 100
snapshot_every = 250

variation.crossover_rate = 0.5
variation.mutation_rate = 1.0
variation.sigma_frac = 0.1

replications = 3
base_seed = 42
output_dir = /tmp/out
)";

std::string with_line(const std::string& line) { return std::string(kDisksConfig) + line + "\n"; }

} // namespace

TEST_CASE("a full config parses into typed fields") {
    const ExperimentConfig cfg = parse_config_text(kDisksConfig);
    CHECK(cfg.domain_type == "planted_disks");
    CHECK(cfg.disks.n_situations == 4);
    CHECK(cfg.disks.disks_per_group == 2);
    CHECK(cfg.disks.dispersion == 0.15);
    CHECK(cfg.disks.radius == 0.08);
    CHECK(cfg.disks.decay_length == 0.2);
    CHECK(cfg.disks.exclusion == 0.05);
    CHECK(cfg.disks.cell_size == 0.1);
    CHECK(cfg.algorithm == "mtmb");
    CHECK(cfg.budget.B == 1000);
    CHECK(cfg.budget.init_target_elites == 8);
    CHECK(cfg.budget.init_cap == 100);
    CHECK(cfg.budget.snapshot_every == 250);
    CHECK(cfg.variation.crossover_rate == 0.5);
    CHECK(cfg.variation.mutation_rate == 1.0);
    CHECK(cfg.variation.sigma_frac == 0.1);
    CHECK(cfg.replications == 3);
    CHECK(cfg.base_seed == 42);
    CHECK(cfg.output_dir == "/tmp/out");
}

TEST_CASE("minimal config relies on defaults") {
    const ExperimentConfig cfg = parse_config_text("domain.type = planted_disks\n"
                                                   "domain.n_situations = 2\n"
                                                   "algorithm = random\n"
                                                   "budget.B = 100\n");
    CHECK(cfg.replications == 1);
    CHECK(cfg.base_seed == 1);
    CHECK(cfg.budget.init_target_elites == 0); // resolved per domain later
    CHECK(cfg.budget.snapshot_every == 0);
    CHECK(cfg.output_dir.empty());
    CHECK(cfg.disks.f_max == 10.0);
}

TEST_CASE("whitespace and comments are tolerated, structure is not") {
    const ExperimentConfig cfg = parse_config_text("  # indented comment\n"
                                                   "\n"
                                                   "domain.type=planted_disks\n"
                                                   "domain.n_situations   =   2\n"
                                                   "algorithm = grid\n"
                                                   "budget.B = 64\n");
    CHECK(cfg.disks.n_situations == 2);
    CHECK(cfg.algorithm == "grid");

    CHECK_THROWS_WITH_AS(parse_config_text(with_line("stray line without equals")),
                         doctest::Contains("stray"), ConfigError);
}

TEST_CASE("unknown, duplicate, and malformed keys fail naming the key") {
    CHECK_THROWS_WITH_AS(parse_config_text(with_line("domain.radiuss = 0.1")),
                         doctest::Contains("domain.radiuss"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config_text(with_line("budget.B = 2000")),
                         doctest::Contains("budget.B"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config_text(with_line("domain.alpha = x")),
                         doctest::Contains("domain.alpha"), ConfigError);

    const char* bad_number = "domain.type = planted_disks\n"
                             "domain.n_situations = four\n"
                             "algorithm = random\n"
                             "budget.B = 100\n";
    CHECK_THROWS_WITH_AS(parse_config_text(bad_number),
                         doctest::Contains("domain.n_situations"), ConfigError);

    const char* trailing = "domain.type = planted_disks\n"
                           "domain.n_situations = 2\n"
                           "algorithm = random\n"
                           "budget.B = 100 please\n";
    CHECK_THROWS_WITH_AS(parse_config_text(trailing), doctest::Contains("budget.B"), ConfigError);
}

TEST_CASE("missing required keys fail naming the key") {
    CHECK_THROWS_WITH_AS(parse_config_text("domain.type = planted_disks\n"
                                           "domain.n_situations = 2\n"
                                           "algorithm = random\n"),
                         doctest::Contains("budget.B"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config_text("domain.n_situations = 2\n"
                                           "algorithm = random\n"
                                           "budget.B = 100\n"),
                         doctest::Contains("domain.type"), ConfigError);
}

TEST_CASE("inapplicable keys for the chosen domain are rejected") {
    CHECK_THROWS_WITH_AS(parse_config_text(with_line("domain.wall_x_min = 0.2")),
                         doctest::Contains("domain.wall_x_min"), ConfigError);

    const char* arm_with_disks_key = "domain.type = planar_arm\n"
                                     "domain.n_situations = 2\n"
                                     "domain.wall_x_min = 0.3\n"
                                     "domain.wall_x_max = 0.9\n"
                                     "domain.radius = 0.08\n"
                                     "algorithm = random\n"
                                     "budget.B = 100\n";
    CHECK_THROWS_WITH_AS(parse_config_text(arm_with_disks_key),
                         doctest::Contains("domain.radius"), ConfigError);
}

TEST_CASE("unknown algorithm and bad replications are rejected at parse time") {
    CHECK_THROWS_WITH_AS(parse_config_text("domain.type = planted_disks\n"
                                           "domain.n_situations = 2\n"
                                           "algorithm = hillclimb\n"
                                           "budget.B = 100\n"),
                         doctest::Contains("algorithm"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config_text("domain.type = planted_disks\n"
                                           "domain.n_situations = 2\n"
                                           "algorithm = random\n"
                                           "budget.B = 100\n"
                                           "replications = 0\n"),
                         doctest::Contains("replications"), ConfigError);
}

TEST_CASE("overrides land before validation and can switch the domain") {
    const ExperimentConfig cfg = parse_config_text(kDisksConfig, {"budget.B=5000", "base_seed=7"});
    CHECK(cfg.budget.B == 5000);
    CHECK(cfg.base_seed == 7);

    // Switching the domain type makes arm keys applicable and disks keys
    // inapplicable, so the remaining disk keys must go too.
    const char* minimal = "domain.type = planted_disks\n"
                          "domain.n_situations = 2\n"
                          "algorithm = random\n"
                          "budget.B = 100\n";
    const ExperimentConfig swapped = parse_config_text(
        minimal, {"domain.type=planar_arm", "domain.wall_x_min=0.3", "domain.wall_x_max=0.9"});
    CHECK(swapped.domain_type == "planar_arm");
    CHECK(swapped.arm.n_situations == 2);
    CHECK(swapped.arm.wall_x_min == 0.3);

    CHECK_THROWS_WITH_AS(parse_config_text(kDisksConfig, {"domain.type=planar_arm"}),
                         doctest::Contains("domain."), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config_text(kDisksConfig, {"no_equals_sign"}),
                         doctest::Contains("no_equals_sign"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config_text(kDisksConfig, {"domain.type=maze"}),
                         doctest::Contains("domain.type"), ConfigError);
}

TEST_CASE("config entries and hash are canonical and sensitive") {
    const ExperimentConfig cfg = parse_config_text(kDisksConfig);
    const auto entries = config_entries(cfg);
    CHECK(entries.at("domain.type") == "planted_disks");
    CHECK(entries.at("budget.B") == "1000");
    CHECK(entries.at("replications") == "3");
    CHECK(entries.count("domain.wall_x_min") == 0); // arm key, disks domain

    CHECK(config_hash(cfg) == config_hash(parse_config_text(kDisksConfig)));
    CHECK(config_hash(cfg) != config_hash(parse_config_text(kDisksConfig, {"budget.B=1001"})));
    // base_seed is part of the experiment identity too.
    CHECK(config_hash(cfg) != config_hash(parse_config_text(kDisksConfig, {"base_seed=43"})));
    // The output directory is not: relocating a run keeps its identity.
    CHECK(config_hash(cfg) == config_hash(parse_config_text(kDisksConfig, {"output_dir=/elsewhere"})));
}

TEST_CASE("build_domain dispatches on the domain type") {
    const ExperimentConfig disks = parse_config_text(kDisksConfig);
    auto d1 = build_domain(disks);
    CHECK(d1->task_count() == 8);
    CHECK(d1->description().find("planted") != std::string::npos);

    const char* arm_text = "domain.type = planar_arm\n"
                           "domain.n_situations = 3\n"
                           "domain.link1 = 0.5\n"
                           "domain.link2 = 0.5\n"
                           "domain.wall_x_min = 0.3\n"
                           "domain.wall_x_max = 0.9\n"
                           "domain.cell_size = 0.1\n"
                           "algorithm = taskwise\n"
                           "budget.B = 600\n";
    const ExperimentConfig arm = parse_config_text(arm_text);
    auto d2 = build_domain(arm);
    CHECK(d2->task_count() == 6);
    CHECK(d2->description().find("arm") != std::string::npos);

    // The same base_seed builds the same domain.
    CHECK(build_domain(disks)->spec_hash() == d1->spec_hash());
}

TEST_CASE("file loading reports missing paths") {
    CHECK_THROWS_WITH_AS(load_config_file("/nonexistent/p.cfg"),
                         doctest::Contains("/nonexistent/p.cfg"), ConfigError);
}
