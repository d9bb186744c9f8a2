#include "mtmb/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "mtmb/errors.hpp"

namespace mtmb {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

template <typename T>
T parse_number(const std::string& key, const std::string& value, const char* kind) {
    T out{};
    const char* begin = value.data();
    const char* end = begin + value.size();
    const auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc{} || ptr != end)
        throw ConfigError(key + ": expected " + kind + ", got \"" + value + "\"");
    return out;
}

std::size_t parse_size(const std::string& key, const std::string& value) {
    return parse_number<std::size_t>(key, value, "a non-negative integer");
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    return parse_number<std::uint64_t>(key, value, "a non-negative integer");
}

double parse_real(const std::string& key, const std::string& value) {
    return parse_number<double>(key, value, "a real number");
}

enum class Applies { Always, Disks, Arm };

struct KeyEntry {
    Applies applies = Applies::Always;
    std::function<void(ExperimentConfig&, const std::string& key, const std::string& value)> set;
    std::function<std::string(const ExperimentConfig&)> get;
};

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

const std::map<std::string, KeyEntry>& key_table() {
    static const std::map<std::string, KeyEntry> table = {
        {"domain.type",
         {Applies::Always,
          [](ExperimentConfig& c, const std::string& k, const std::string& v) {
              if (v != "planted_disks" && v != "planar_arm")
                  throw ConfigError(k + ": unknown domain type \"" + v +
                                    "\" (expected planted_disks or planar_arm)");
              c.domain_type = v;
          },
          [](const ExperimentConfig& c) { return c.domain_type; }}},
        {"domain.n_situations",
         {Applies::Always,
          [](ExperimentConfig& c, const std::string& k, const std::string& v) {
              c.disks.n_situations = c.arm.n_situations = parse_size(k, v);
          },
          [](const ExperimentConfig& c) {
              return std::to_string(c.domain_type == "planar_arm" ? c.arm.n_situations
                                                                  : c.disks.n_situations);
          }}},
        {"domain.disks_per_group",
         {Applies::Disks,
          [](ExperimentConfig& c, const std::string& k, const std::string& v) {
              c.disks.disks_per_group = parse_size(k, v);
          },
          [](const ExperimentConfig& c) { return std::to_string(c.disks.disks_per_group); }}},
        {"domain.dispersion",
         {Applies::Disks,
          [](ExperimentConfig& c, const std::string& k, const std::string& v) {
              c.disks.dispersion = parse_real(k, v);
          },
          [](const ExperimentConfig& c) { return format_real(c.disks.dispersion); }}},
        {"domain.radius",
         {Applies::Disks,
          [](ExperimentConfig& c, const std::string& k, const std::string& v) {
              c.disks.radius = parse_real(k, v);
          },
          [](const ExperimentConfig& c) { return format_real(c.disks.radius); }}},
        {"domain.decay_length",
         {Applies::Disks,
          [](ExperimentConfig& c, const std::string& k, const std::string& v) {
              c.disks.decay_length = parse_real(k, v);
          },
          [](const ExperimentConfig& c) { return format_real(c.disks.decay_length); }}},
        {"domain.exclusion",
         {Applies::Disks,
          [](ExperimentConfig& c, const std::string& k, const std::string& v) {
              c.disks.exclusion = parse_real(k, v);
          },
          [](const ExperimentConfig& c) { return format_real(c.disks.exclusion); }}},
        {"domain.cell_size",
         {Applies::Always,
          [](ExperimentConfig& c, const std::string& k, const std::string& v) {
              c.disks.cell_size = c.arm.cell_size = parse_real(k, v);
          },
          [](const ExperimentConfig& c) {
              return format_real(c.domain_type == "planar_arm" ? c.arm.cell_size
                                                               : c.disks.cell_size);
          }}},
        {"domain.f_max",
         {Applies::Always,
          [](ExperimentConfig& c, const std::string& k, const std::string& v) {
              c.disks.f_max = c.arm.f_max = parse_real(k, v);
          },
          [](const ExperimentConfig& c) {
              return format_real(c.domain_type == "planar_arm" ? c.arm.f_max : c.disks.f_max);
          }}},
        {"domain.link1",
         {Applies::Arm,
          [](ExperimentConfig& c, const std::string& k, const std::string& v) {
              c.arm.link1 = parse_real(k, v);
          },
          [](const ExperimentConfig& c) { return format_real(c.arm.link1); }}},
        {"domain.link2",
         {Applies::Arm,
          [](ExperimentConfig& c, const std::string& k, const std::string& v) {
              c.arm.link2 = parse_real(k, v);
          },
          [](const ExperimentConfig& c) { return format_real(c.arm.link2); }}},
        {"domain.wall_x_min",
         {Applies::Arm,
          [](ExperimentConfig& c, const std::string& k, const std::string& v) {
              c.arm.wall_x_min = parse_real(k, v);
          },
          [](const ExperimentConfig& c) { return format_real(c.arm.wall_x_min); }}},
        {"domain.wall_x_max",
         {Applies::Arm,
          [](ExperimentConfig& c, const std::string& k, const std::string& v) {
              c.arm.wall_x_max = parse_real(k, v);
          },
          [](const ExperimentConfig& c) { return format_real(c.arm.wall_x_max); }}},
        {"algorithm",
         {Applies::Always,
          [](ExperimentConfig& c, const std::string&, const std::string& v) {
              parse_algorithm(v); // unknown names throw here
              c.algorithm = v;
          },
          [](const ExperimentConfig& c) { return c.algorithm; }}},
        {"budget.B",
         {Applies::Always,
          [](ExperimentConfig& c, const std::string& k, const std::string& v) {
              c.budget.B = parse_size(k, v);
          },
          [](const ExperimentConfig& c) { return std::to_string(c.budget.B); }}},
        {"budget.init_target_elites",
         {Applies::Always,
          [](ExperimentConfig& c, const std::string& k, const std::string& v) {
              c.budget.init_target_elites = parse_size(k, v);
          },
          [](const ExperimentConfig& c) { return std::to_string(c.budget.init_target_elites); }}},
        {"budget.init_cap",
         {Applies::Always,
          [](ExperimentConfig& c, const std::string& k, const std::string& v) {
              c.budget.init_cap = parse_size(k, v);
          },
          [](const ExperimentConfig& c) { return std::to_string(c.budget.init_cap); }}},
        {"variation.crossover_rate",
         {Applies::Always,
          [](ExperimentConfig& c, const std::string& k, const std::string& v) {
              c.variation.crossover_rate = parse_real(k, v);
          },
          [](const ExperimentConfig& c) { return format_real(c.variation.crossover_rate); }}},
        {"variation.mutation_rate",
         {Applies::Always,
          [](ExperimentConfig& c, const std::string& k, const std::string& v) {
              c.variation.mutation_rate = parse_real(k, v);
          },
          [](const ExperimentConfig& c) { return format_real(c.variation.mutation_rate); }}},
        {"variation.sigma_frac",
         {Applies::Always,
          [](ExperimentConfig& c, const std::string& k, const std::string& v) {
              c.variation.sigma_frac = parse_real(k, v);
          },
          [](const ExperimentConfig& c) { return format_real(c.variation.sigma_frac); }}},
        {"replications",
         {Applies::Always,
          [](ExperimentConfig& c, const std::string& k, const std::string& v) {
              c.replications = parse_size(k, v);
          },
          [](const ExperimentConfig& c) { return std::to_string(c.replications); }}},
        {"base_seed",
         {Applies::Always,
          [](ExperimentConfig& c, const std::string& k, const std::string& v) {
              c.base_seed = parse_u64(k, v);
          },
          [](const ExperimentConfig& c) { return std::to_string(c.base_seed); }}},
        {"snapshot_every",
         {Applies::Always,
          [](ExperimentConfig& c, const std::string& k, const std::string& v) {
              c.budget.snapshot_every = parse_size(k, v);
          },
          [](const ExperimentConfig& c) { return std::to_string(c.budget.snapshot_every); }}},
        {"output_dir",
         {Applies::Always,
          [](ExperimentConfig& c, const std::string&, const std::string& v) {
              c.output_dir = v;
          },
          [](const ExperimentConfig& c) { return c.output_dir; }}},
    };
    return table;
}

const KeyEntry& lookup(const std::string& key) {
    const auto it = key_table().find(key);
    if (it == key_table().end())
        throw ConfigError("config: unknown key \"" + key + "\"");
    return it->second;
}

/// Split one `key=value` assignment; used by file lines and --set alike.
std::pair<std::string, std::string> split_assignment(const std::string& text,
                                                     const char* what) {
    const auto eq = text.find('=');
    if (eq == std::string::npos)
        throw ConfigError(std::string(what) + " must look like key = value, got \"" + text +
                          "\"");
    std::string key = trim(std::string_view(text).substr(0, eq));
    std::string value = trim(std::string_view(text).substr(eq + 1));
    if (key.empty())
        throw ConfigError(std::string(what) + " has an empty key: \"" + text + "\"");
    return {std::move(key), std::move(value)};
}

bool applies_to(Applies a, const std::string& domain_type) {
    switch (a) {
    case Applies::Always:
        return true;
    case Applies::Disks:
        return domain_type == "planted_disks";
    case Applies::Arm:
        return domain_type == "planar_arm";
    }
    return false;
}

} // namespace

ExperimentConfig parse_config_text(const std::string& text,
                                   const std::vector<std::string>& overrides) {
    // Collect raw entries first: the file is order-insensitive and --set
    // overrides (including domain.type) must land before validation.
    std::map<std::string, std::string> entries;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#')
            continue;
        auto [key, value] = split_assignment(stripped, "config line");
        lookup(key); // unknown keys are an error even before typing
        if (!entries.emplace(key, value).second)
            throw ConfigError("config: duplicate key \"" + key + "\"");
    }
    for (const std::string& assignment : overrides) {
        auto [key, value] = split_assignment(assignment, "--set override");
        lookup(key);
        entries[key] = value; // overrides may overwrite
    }

    for (const char* required : {"domain.type", "domain.n_situations", "algorithm", "budget.B"})
        if (entries.find(required) == entries.end())
            throw ConfigError(std::string("config: missing required key \"") + required + "\"");

    ExperimentConfig cfg;
    cfg.domain_type = entries.at("domain.type"); // applicability needs it first
    lookup("domain.type").set(cfg, "domain.type", cfg.domain_type);
    for (const auto& [key, value] : entries) {
        const KeyEntry& entry = lookup(key);
        if (!applies_to(entry.applies, cfg.domain_type))
            throw ConfigError("config: key \"" + key + "\" does not apply to domain.type " +
                              cfg.domain_type);
        entry.set(cfg, key, value);
    }
    if (cfg.replications < 1)
        throw ConfigError("replications: must be >= 1");
    return cfg;
}

ExperimentConfig load_config_file(const std::string& path,
                                  const std::vector<std::string>& overrides) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("config: cannot read file \"" + path + "\"");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str(), overrides);
}

std::map<std::string, std::string> config_entries(const ExperimentConfig& cfg) {
    std::map<std::string, std::string> out;
    for (const auto& [key, entry] : key_table())
        if (applies_to(entry.applies, cfg.domain_type))
            out.emplace(key, entry.get(cfg));
    return out;
}

std::uint64_t config_hash(const ExperimentConfig& cfg) {
    std::uint64_t h = 0xcbf29ce484222325ULL; // FNV-1a
    auto mix = [&h](std::string_view s) {
        for (unsigned char ch : s) {
            h ^= ch;
            h *= 0x100000001b3ULL;
        }
    };
    for (const auto& [key, value] : config_entries(cfg)) {
        if (key == "output_dir")
            continue; // where results land is not part of the experiment
        mix(key);
        mix("=");
        mix(value);
        mix("\n");
    }
    return h;
}

std::unique_ptr<TaskDomain> build_domain(const ExperimentConfig& cfg) {
    if (cfg.domain_type == "planted_disks")
        return planted_disks_build(cfg.disks, cfg.base_seed);
    if (cfg.domain_type == "planar_arm")
        return planar_arm_build(cfg.arm, cfg.base_seed);
    throw ConfigError("domain.type: unknown domain type \"" + cfg.domain_type + "\"");
}

} // namespace mtmb
