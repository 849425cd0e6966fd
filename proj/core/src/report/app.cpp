#include "srslab/report/app.hpp"

#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "srslab/errors.hpp"
#include "srslab/report/chart.hpp"
#include "srslab/report/table.hpp"

namespace srslab::report {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

std::string sanitize(const std::string& name) {
    std::string out;
    for (char c : name) out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') ? c : '_';
    return out;
}

std::string hex64(uint64_t v) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string utc_now() {
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

ordered_json run_record_json(const harness::RunRecord& rec) {
    ordered_json j;
    j["variant"] = rec.variant;
    j["seed"] = rec.seed;
    j["config_digest"] = hex64(rec.timeline.config_digest);
    j["diverged"] = rec.timeline.diverged;
    j["failed"] = rec.failed;
    j["error"] = rec.failed ? rec.error : rec.timeline.error;
    j["threshold"] = rec.threshold;
    if (rec.final_score) j["final_score"] = *rec.final_score;
    else j["final_score"] = nullptr;
    if (rec.efficiency.episodes) j["episodes_to_threshold"] = *rec.efficiency.episodes;
    else j["episodes_to_threshold"] = nullptr;
    ordered_json pts = ordered_json::array();
    for (const auto& [ep, score] : rec.timeline.points) pts.push_back({ep, score});
    j["points"] = std::move(pts);
    return j;
}

void write_text(const fs::path& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string());
    out << body;
    if (!out.good()) throw IoError("write failed for " + path.string());
}

void preflight_writable(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir / "runs", ec);
    if (ec) throw IoError("output directory not writable: " + dir.string() + " (" + ec.message() + ")");
    const fs::path probe = dir / ".write_probe";
    {
        std::ofstream out(probe);
        if (!out) throw IoError("output directory not writable: " + dir.string());
    }
    fs::remove(probe, ec);
}

}  // namespace

ResultTable suite_table(const harness::SuiteResult& result) {
    ResultTable table;
    for (const auto& agg : result.aggregates) {
        ResultRow row;
        row.variant = agg.variant;
        row.metric = agg.metric;
        row.mean = agg.result.mean;
        row.ci_half_width = agg.result.half_width;
        row.n = agg.result.n;
        row.attain = agg.result.attain;
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::vector<ChartSeries> chart_series_from_runs(const std::vector<harness::RunRecord>& runs,
                                                const std::vector<std::string>& variant_order) {
    std::vector<ChartSeries> series;
    for (const auto& name : variant_order) {
        // mean score per episode index over the seeds that reached it
        std::map<int, std::pair<double, int>> acc;
        for (const auto& rec : runs) {
            if (rec.variant != name) continue;
            for (const auto& [ep, score] : rec.timeline.points) {
                acc[ep].first += score;
                acc[ep].second += 1;
            }
        }
        ChartSeries s;
        s.name = name;
        for (const auto& [ep, sum_count] : acc)
            s.points.emplace_back(static_cast<double>(ep), sum_count.first / sum_count.second);
        series.push_back(std::move(s));
    }
    return series;
}

void write_outputs(const ExperimentSpec& spec, const harness::SuiteResult& result,
                   const fs::path& out_dir) {
    write_text(out_dir / "spec.json", serialize_spec(spec));

    for (const auto& rec : result.runs) {
        const fs::path p =
            out_dir / "runs" / (sanitize(rec.variant) + "__seed" + std::to_string(rec.seed) + ".json");
        write_text(p, run_record_json(rec).dump(2) + "\n");
    }

    if (!result.aggregates.empty()) {
        const ResultTable table = suite_table(result);
        if (spec.emit.csv) emit_table(table, TableFormat::csv, out_dir / "aggregate.csv");
        if (spec.emit.json) emit_table(table, TableFormat::json, out_dir / "aggregate.json");
    }

    if (spec.emit.svg) {
        std::vector<std::string> order;
        for (const auto& v : spec.variants) order.push_back(v.name);
        emit_chart(chart_series_from_runs(result.runs, order), out_dir / "learning_curves.svg",
                   spec.experiment, "training episodes", "average cumulative reward");
    }

    // the only timestamp lives in this sidecar; data files stay deterministic
    ordered_json meta;
    meta["created_utc"] = utc_now();
    meta["tool"] = "srslab";
    meta["runs"] = result.runs.size();
    meta["failures"] = result.failures;
    meta["chart_series"] = "per-variant mean over seeds; per-seed timelines under runs/";
    write_text(out_dir / "meta.json", meta.dump(2) + "\n");
}

void replot(const fs::path& out_dir) {
    std::ifstream spec_in(out_dir / "spec.json");
    if (!spec_in) throw IoError("replot: missing " + (out_dir / "spec.json").string());
    std::string text((std::istreambuf_iterator<char>(spec_in)), std::istreambuf_iterator<char>());
    const ExperimentSpec spec = parse_spec(text);

    std::vector<harness::RunRecord> runs;
    for (const auto& v : spec.variants) {
        for (uint64_t seed : spec.seeds) {
            const fs::path p =
                out_dir / "runs" / (sanitize(v.name) + "__seed" + std::to_string(seed) + ".json");
            std::ifstream in(p);
            if (!in) throw IoError("replot: missing run file " + p.string());
            ordered_json j;
            in >> j;
            harness::RunRecord rec;
            rec.variant = j.at("variant").get<std::string>();
            rec.seed = j.at("seed").get<uint64_t>();
            for (const auto& pt : j.at("points"))
                rec.timeline.points.emplace_back(pt.at(0).get<int>(), pt.at(1).get<double>());
            runs.push_back(std::move(rec));
        }
    }

    std::vector<std::string> order;
    for (const auto& v : spec.variants) order.push_back(v.name);
    emit_chart(chart_series_from_runs(runs, order), out_dir / "learning_curves.svg",
               spec.experiment, "training episodes", "average cumulative reward");
}

int run_main(int argc, const char* const* argv) {
    CLI::App app{"desk-scale RL lab for stochastic-reward recommendation environments"};
    app.require_subcommand(1);

    std::string spec_path, out_override, replot_dir;
    int parallel = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    uint64_t seed_offset = 0;

    CLI::App* cmd_run = app.add_subcommand("run", "execute an experiment spec");
    cmd_run->add_option("--spec", spec_path, "experiment spec (JSON)")->required();
    cmd_run->add_option("--out", out_override, "output directory (overrides the spec)");
    cmd_run->add_option("--parallel", parallel, "max concurrent runs");
    cmd_run->add_option("--seed-offset", seed_offset, "added to every seed in the spec");

    CLI::App* cmd_replot = app.add_subcommand("replot", "regenerate charts from stored results");
    cmd_replot->add_option("--out", replot_dir, "experiment output directory")->required();

    CLI::App* cmd_validate = app.add_subcommand("validate", "parse and echo a spec");
    cmd_validate->add_option("--spec", spec_path, "experiment spec (JSON)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (cmd_validate->parsed()) {
            std::ifstream in(spec_path);
            if (!in) throw ConfigError("cannot open spec file " + spec_path);
            std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
            std::cout << serialize_spec(parse_spec(text));
            return 0;
        }

        if (cmd_replot->parsed()) {
            replot(replot_dir);
            return 0;
        }

        // run
        std::ifstream in(spec_path);
        if (!in) throw ConfigError("cannot open spec file " + spec_path);
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        ExperimentSpec spec = parse_spec(text);
        if (!out_override.empty()) spec.output_dir = out_override;

        const fs::path out_dir = spec.output_dir;
        preflight_writable(out_dir);  // fail before any training happens

        std::vector<uint64_t> seeds = spec.seeds;
        for (auto& s : seeds) s += seed_offset;

        harness::SuiteOptions options = spec.suite;
        options.parallelism = std::max(1, parallel);

        const harness::SuiteResult result = harness::run_suite(spec.plans(), seeds, options);
        write_outputs(spec, result, out_dir);

        for (const auto& rec : result.runs) {
            if (rec.failed)
                std::cerr << "run failed: " << rec.variant << " seed " << rec.seed << ": "
                          << rec.error << "\n";
            else if (rec.timeline.diverged)
                std::cerr << "run diverged: " << rec.variant << " seed " << rec.seed << ": "
                          << rec.timeline.error << "\n";
        }
        std::cout << "completed " << result.runs.size() << " runs, " << result.failures
                  << " failure(s); outputs in " << out_dir.string() << "\n";
        return result.failures > 0 ? 1 : 0;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace srslab::report
