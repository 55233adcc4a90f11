#include "qhsq/experiment_config.hpp"

#include <fstream>
#include <sstream>

#include "qhsq/errors.hpp"

namespace qhsq::harness {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

template <typename T>
std::vector<T> parse_list(const std::string& v, const std::string& key) {
    std::vector<T> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        try {
            if constexpr (std::is_same_v<T, int>) {
                out.push_back(std::stoi(item));
            } else {
                out.push_back(std::stod(item));
            }
        } catch (const std::exception&) {
            throw ConfigError("config: bad list entry '" + item + "' for key " + key);
        }
    }
    if (out.empty()) throw ConfigError("config: empty list for key " + key);
    return out;
}

} // namespace

void ExperimentConfig::validate() const {
    if (!(L > 0.0)) throw ConfigError("config: L must be > 0");
    if (M < 1) throw ConfigError("config: M must be >= 1");
    if (N < 1) throw ConfigError("config: N must be >= 1");
    if (!(sigma_f > 0.0) || !(ell > 0.0)) throw ConfigError("config: sigma_f and ell must be > 0");
    if (sigma < 0.0) throw ConfigError("config: sigma must be >= 0");
    if (tau < 1) throw ConfigError("config: tau must be >= 1");
    if (ranks.empty()) throw ConfigError("config: ranks must be nonempty");
    for (int r : ranks) {
        if (r < 1 || r > M) throw ConfigError("config: rank outside [1, M]");
    }
    if (epsilons.empty()) throw ConfigError("config: epsilons must be nonempty");
    for (double e : epsilons) {
        if (!(e > 0.0)) throw ConfigError("config: epsilon values must be > 0");
    }
    if (workers < 0) throw ConfigError("config: workers must be >= 0");
}

void ExperimentConfig::apply_test_scale() {
    tau = 10;
    shots = 100000;
}

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config: expected 'key = value' at line " + std::to_string(lineno));
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        try {
            if (key == "L") cfg.L = std::stod(val);
            else if (key == "M") cfg.M = std::stoi(val);
            else if (key == "N") cfg.N = std::stoi(val);
            else if (key == "sigma_f") cfg.sigma_f = std::stod(val);
            else if (key == "ell") cfg.ell = std::stod(val);
            else if (key == "sigma") cfg.sigma = std::stod(val);
            else if (key == "tau") cfg.tau = std::stoi(val);
            else if (key == "shots") cfg.shots = std::stoull(val);
            else if (key == "ranks") cfg.ranks = parse_list<int>(val, key);
            else if (key == "epsilons") cfg.epsilons = parse_list<double>(val, key);
            else if (key == "seed") cfg.seed = std::stoull(val);
            else if (key == "out_dir") cfg.out_dir = val;
            else if (key == "exact") cfg.exact = (val == "true" || val == "1");
            else if (key == "workers") cfg.workers = std::stoi(val);
            else throw ConfigError("config: unknown key '" + key + "'");
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception&) {
            throw ConfigError("config: bad value '" + val + "' for key " + key);
        }
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

std::string serialize_config(const ExperimentConfig& cfg) {
    std::ostringstream out;
    out.precision(17);
    out << "L = " << cfg.L << "\n";
    out << "M = " << cfg.M << "\n";
    out << "N = " << cfg.N << "\n";
    out << "sigma_f = " << cfg.sigma_f << "\n";
    out << "ell = " << cfg.ell << "\n";
    out << "sigma = " << cfg.sigma << "\n";
    out << "tau = " << cfg.tau << "\n";
    out << "shots = " << cfg.shots << "\n";
    out << "ranks = ";
    for (std::size_t i = 0; i < cfg.ranks.size(); ++i) out << (i ? "," : "") << cfg.ranks[i];
    out << "\n";
    out << "epsilons = ";
    for (std::size_t i = 0; i < cfg.epsilons.size(); ++i) out << (i ? "," : "") << cfg.epsilons[i];
    out << "\n";
    out << "seed = " << cfg.seed << "\n";
    out << "out_dir = " << cfg.out_dir << "\n";
    out << "exact = " << (cfg.exact ? "true" : "false") << "\n";
    out << "workers = " << cfg.workers << "\n";
    return out.str();
}

void apply_overrides(ExperimentConfig& cfg, const ConfigOverrides& ov) {
    if (ov.seed) cfg.seed = *ov.seed;
    if (ov.tau) cfg.tau = *ov.tau;
    if (ov.shots) cfg.shots = *ov.shots;
    if (ov.ranks) cfg.ranks = *ov.ranks;
    if (ov.exact) cfg.exact = *ov.exact;
    if (ov.out_dir) cfg.out_dir = *ov.out_dir;
    if (ov.N) cfg.N = *ov.N;
    if (ov.sigma) cfg.sigma = *ov.sigma;
    cfg.validate();
}

} // namespace qhsq::harness
