#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ekd/model.hpp"

namespace ekd {

/// Flat dotted-key configuration with [section] grouping in the file form.
/// Command-line flags of the same dotted names override file values.
class RunConfig {
public:
    static RunConfig from_file(const std::filesystem::path& path);
    static RunConfig empty() { return RunConfig{}; }

    void set(const std::string& dotted_key, const std::string& value);
    bool has(const std::string& key) const;

    std::string str(const std::string& key, const std::string& fallback = "") const;
    double num(const std::string& key, double fallback) const;
    double num_required(const std::string& key) const;
    long integer(const std::string& key, long fallback) const;
    bool flag(const std::string& key, bool fallback) const;
    std::vector<double> list(const std::string& key) const;

    /// [model] section: trend, kernel, scaling, sigma2, rho, gamma, free,
    /// beta, vnu.
    GpModel make_model() const;
    VnuMode vnu_mode() const;

    /// [grid] section: dim, min, max, res (regular grid with cliques), and
    /// the optional eval_res densification.
    GridSpace make_grid() const;

private:
    std::map<std::string, std::string> kv_;
};

}  // namespace ekd
