// SPDX-License-Identifier: Apache-2.0
//
// uber-radar: joint unimodular waveform and multi-IRS phase-shift design
// Copyright (C) 2026 the uber-radar authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "uber/experiment.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace uber
{

using nlohmann::json;

// ---- spec parsing -----------------------------------------------------------

namespace
{
    [[noreturn]] void fail(const std::string &ctx, const std::string &msg)
    {
        throw std::invalid_argument(ctx + ": " + msg);
    }

    void check_keys(const json &obj, std::initializer_list<const char *> allowed, const std::string &ctx)
    {
        for (const auto &item : obj.items())
        {
            bool known = false;
            for (const char *key : allowed)
                if (item.key() == key)
                {
                    known = true;
                    break;
                }
            if (!known)
                fail(ctx, "unknown field '" + item.key() + "'");
        }
    }

    const json &require(const json &obj, const char *key, const std::string &ctx)
    {
        auto it = obj.find(key);
        if (it == obj.end())
            fail(ctx, "missing required field '" + std::string(key) + "'");
        return *it;
    }

    double as_number(const json &v, const std::string &ctx)
    {
        if (!v.is_number())
            fail(ctx, "expected a number");
        return v.get<double>();
    }

    std::uint64_t as_uint(const json &v, const std::string &ctx)
    {
        if (!v.is_number_unsigned())
            fail(ctx, "expected a non-negative integer");
        return v.get<std::uint64_t>();
    }

    Point2 as_point(const json &v, const std::string &ctx)
    {
        if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
            fail(ctx, "expected a 2-element [x, y] array");
        return {v[0].get<double>(), v[1].get<double>()};
    }

    SceneConfig parse_scene(const json &obj, const std::string &ctx)
    {
        if (!obj.is_object())
            fail(ctx, "expected an object");
        check_keys(obj,
                   {"radar_position", "target_position", "wavelength", "n_tx", "n_rx", "radar_spacing",
                    "noise_variance", "irs", "sampling_interval", "speed_of_light"},
                   ctx);

        SceneConfig s;
        s.radar_position = as_point(require(obj, "radar_position", ctx), ctx + ".radar_position");
        s.target_position = as_point(require(obj, "target_position", ctx), ctx + ".target_position");
        s.wavelength = as_number(require(obj, "wavelength", ctx), ctx + ".wavelength");
        s.n_tx = as_uint(require(obj, "n_tx", ctx), ctx + ".n_tx");
        s.n_rx = as_uint(require(obj, "n_rx", ctx), ctx + ".n_rx");
        s.noise_variance = as_number(require(obj, "noise_variance", ctx), ctx + ".noise_variance");
        s.radar_spacing = obj.contains("radar_spacing")
                              ? as_number(obj["radar_spacing"], ctx + ".radar_spacing")
                              : s.wavelength / 2.0;
        if (obj.contains("sampling_interval"))
            s.sampling_interval = as_number(obj["sampling_interval"], ctx + ".sampling_interval");
        if (obj.contains("speed_of_light"))
            s.speed_of_light = as_number(obj["speed_of_light"], ctx + ".speed_of_light");

        const json &irs = require(obj, "irs", ctx);
        if (!irs.is_array() || irs.empty())
            fail(ctx + ".irs", "expected a non-empty array of IRS platforms");
        for (std::size_t m = 0; m < irs.size(); ++m)
        {
            const std::string ictx = ctx + ".irs[" + std::to_string(m) + "]";
            const json &entry = irs[m];
            if (!entry.is_object())
                fail(ictx, "expected an object");
            check_keys(entry, {"position", "n_elements", "spacing"}, ictx);
            IrsConfig irs_cfg;
            irs_cfg.position = as_point(require(entry, "position", ictx), ictx + ".position");
            irs_cfg.n_elements = as_uint(require(entry, "n_elements", ictx), ictx + ".n_elements");
            irs_cfg.spacing = entry.contains("spacing") ? as_number(entry["spacing"], ictx + ".spacing")
                                                        : s.wavelength / 2.0;
            s.irs_list.push_back(irs_cfg);
        }
        return s;
    }

    SweepMode parse_mode(const std::string &mode, const std::string &ctx)
    {
        if (mode == "sigma")
            return SweepMode::sigma;
        if (mode == "irs_count")
            return SweepMode::irs_count;
        if (mode == "trace")
            return SweepMode::trace;
        fail(ctx, "unknown sweep mode '" + mode + "' (expected sigma, irs_count or trace)");
    }
}

void ExperimentSpec::validate() const
{
    if (schema_version != 1)
        throw std::invalid_argument("spec: unsupported schema_version " + std::to_string(schema_version));
    scene.validate();
    if (outer_iterations < 1)
        throw std::invalid_argument("spec: design.outer_iterations must be >= 1");
    if (inner_iterations < 1)
        throw std::invalid_argument("spec: design.inner_iterations must be >= 1");
    if (penalty < 0.0)
        throw std::invalid_argument("spec: design.penalty must be >= 0");
    if (n_samples < 1)
        throw std::invalid_argument("spec: design.n_samples must be >= 1");
    if (waveform_steps < 1)
        throw std::invalid_argument("spec: design.waveform_steps must be >= 1");
    if (n_seeds < 1)
        throw std::invalid_argument("spec: seeds.count must be >= 1");

    if (mode == SweepMode::sigma)
    {
        if (sigma_values.empty())
            throw std::invalid_argument("spec: sweep.sigma2 must be a non-empty list in sigma mode");
        for (double s : sigma_values)
            if (s <= 0.0)
                throw std::invalid_argument("spec: sweep.sigma2 entries must be > 0");
    }
    if (mode == SweepMode::irs_count && m_counts.empty())
        throw std::invalid_argument("spec: sweep.m_counts must be a non-empty list in irs_count mode");
    for (arma::uword m : m_counts)
    {
        if (m < 1)
            throw std::invalid_argument("spec: sweep.m_counts entries must be >= 1");
        if (m > scene.irs_list.size())
            throw std::invalid_argument("spec: sweep.m_counts entry " + std::to_string(m) +
                                        " exceeds the number of configured IRS platforms");
    }
}

ExperimentSpec parse_spec(const std::string &json_text, const std::string &origin)
{
    json root;
    try
    {
        root = json::parse(json_text);
    }
    catch (const json::parse_error &e)
    {
        throw std::invalid_argument(origin + ": " + e.what());
    }
    if (!root.is_object())
        fail(origin, "expected a JSON object at the top level");
    check_keys(root, {"schema_version", "scene", "design", "sweep", "seeds"}, origin);

    ExperimentSpec spec;
    spec.schema_version = static_cast<int>(as_uint(require(root, "schema_version", origin), origin + ".schema_version"));
    spec.scene = parse_scene(require(root, "scene", origin), origin + ".scene");

    if (root.contains("design"))
    {
        const json &d = root["design"];
        const std::string ctx = origin + ".design";
        if (!d.is_object())
            fail(ctx, "expected an object");
        check_keys(d, {"outer_iterations", "inner_iterations", "penalty", "n_samples", "waveform_steps"}, ctx);
        if (d.contains("outer_iterations"))
            spec.outer_iterations = as_uint(d["outer_iterations"], ctx + ".outer_iterations");
        if (d.contains("inner_iterations"))
            spec.inner_iterations = as_uint(d["inner_iterations"], ctx + ".inner_iterations");
        if (d.contains("penalty"))
            spec.penalty = as_number(d["penalty"], ctx + ".penalty");
        if (d.contains("n_samples"))
            spec.n_samples = as_uint(d["n_samples"], ctx + ".n_samples");
        if (d.contains("waveform_steps"))
            spec.waveform_steps = as_uint(d["waveform_steps"], ctx + ".waveform_steps");
    }

    {
        const json &sweep = require(root, "sweep", origin);
        const std::string ctx = origin + ".sweep";
        if (!sweep.is_object())
            fail(ctx, "expected an object");
        check_keys(sweep, {"mode", "sigma2", "m_counts"}, ctx);
        const json &mode = require(sweep, "mode", ctx);
        if (!mode.is_string())
            fail(ctx + ".mode", "expected a string");
        spec.mode = parse_mode(mode.get<std::string>(), ctx + ".mode");

        if (sweep.contains("sigma2"))
        {
            const json &grid = sweep["sigma2"];
            if (!grid.is_array())
                fail(ctx + ".sigma2", "expected an array");
            for (const auto &v : grid)
                spec.sigma_values.push_back(as_number(v, ctx + ".sigma2"));
        }
        if (sweep.contains("m_counts"))
        {
            const json &counts = sweep["m_counts"];
            if (!counts.is_array())
                fail(ctx + ".m_counts", "expected an array");
            for (const auto &v : counts)
                spec.m_counts.push_back(as_uint(v, ctx + ".m_counts"));
        }
    }

    if (root.contains("seeds"))
    {
        const json &seeds = root["seeds"];
        const std::string ctx = origin + ".seeds";
        if (!seeds.is_object())
            fail(ctx, "expected an object");
        check_keys(seeds, {"count", "base"}, ctx);
        if (seeds.contains("count"))
            spec.n_seeds = as_uint(seeds["count"], ctx + ".count");
        if (seeds.contains("base"))
            spec.base_seed = as_uint(seeds["base"], ctx + ".base");
    }

    // Sigma mode compares all configured platforms unless a list is given
    if (spec.mode == SweepMode::sigma && spec.m_counts.empty())
        spec.m_counts.push_back(static_cast<arma::uword>(spec.scene.irs_list.size()));

    spec.validate();
    return spec;
}

ExperimentSpec load_spec(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::invalid_argument("cannot open spec file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_spec(buffer.str(), path);
}

// ---- bundled templates ------------------------------------------------------

namespace
{
    json reference_scene()
    {
        return json{
            {"radar_position", {0.0, 0.0}},
            {"target_position", {5000.0, 5000.0}},
            {"wavelength", 0.1},
            {"n_tx", 8},
            {"n_rx", 8},
            {"noise_variance", 0.1},
            {"irs", json::array({
                        json{{"position", {500.0, 500.0}}, {"n_elements", 8}},
                        json{{"position", {500.0, -800.0}}, {"n_elements", 8}},
                        json{{"position", {300.0, 1300.0}}, {"n_elements", 8}},
                    })},
        };
    }

    json reference_design()
    {
        return json{
            {"outer_iterations", 50},
            {"inner_iterations", 20},
            {"penalty", 0.1},
            {"n_samples", 8},
            {"waveform_steps", 1},
        };
    }
}

std::string spec_template(const std::string &name)
{
    json root;
    if (name == "fig1")
    {
        root = json{
            {"schema_version", 1},
            {"scene", reference_scene()},
            {"design", reference_design()},
            {"sweep", json{{"mode", "trace"}}},
            {"seeds", json{{"count", 1}, {"base", 1}}},
        };
    }
    else if (name == "fig1a")
    {
        root = json{
            {"schema_version", 1},
            {"scene", reference_scene()},
            {"design", reference_design()},
            {"sweep", json{{"mode", "sigma"}, {"sigma2", {0.01, 0.1, 1.0, 10.0}}, {"m_counts", {1, 3}}}},
            {"seeds", json{{"count", 20}, {"base", 1}}},
        };
    }
    else
    {
        throw std::invalid_argument("unknown spec template '" + name + "' (available: fig1, fig1a)");
    }
    return root.dump(2) + "\n";
}

// ---- sweep execution --------------------------------------------------------

namespace
{
    struct Cell
    {
        std::uint64_t seed = 0;
        double sigma2 = 0.0;
        arma::uword m_count = 0;
    };

    UberResult run_cell(const ExperimentSpec &spec, const Cell &cell)
    {
        SceneConfig scene = spec.scene;
        scene.noise_variance = cell.sigma2;
        scene.seed = cell.seed;
        scene.irs_list.resize(cell.m_count);
        const ChannelSet channels = build_channels(scene);

        // Reflectivities for the full IRS list are drawn first and truncated,
        // so runs with different m_count share per-platform draws and the
        // initial waveform for a given seed.
        ComplexNormalSampler sampler(cell.seed);
        const arma::cx_vec alpha_full = sampler.vector(static_cast<arma::uword>(spec.scene.irs_list.size()));
        const arma::cx_mat x0 = unit_modulus_project(sampler.matrix(spec.scene.n_tx, spec.n_samples));

        UberConfig cfg;
        cfg.outer_iterations = spec.outer_iterations;
        cfg.inner_iterations = spec.inner_iterations;
        cfg.penalty = spec.penalty;
        cfg.waveform_steps = spec.waveform_steps;
        cfg.initial_waveform = x0;
        cfg.initial_phase_1 = arma::cx_vec(channels.total_elements(), arma::fill::ones);
        cfg.initial_phase_2 = arma::cx_vec(channels.total_elements(), arma::fill::ones);

        return run_uber(scene, channels, arma::cx_vec(alpha_full.head(cell.m_count)), cfg);
    }

    std::vector<ResultRow> run_cells_final(const ExperimentSpec &spec, const std::vector<Cell> &cells)
    {
        std::vector<ResultRow> rows(cells.size());
        parallel_for(cells.size(), [&](std::size_t i) {
            const Cell &cell = cells[i];
            try
            {
                const auto start = std::chrono::steady_clock::now();
                const UberResult result = run_cell(spec, cell);
                const auto stop = std::chrono::steady_clock::now();

                ResultRow row;
                row.seed = cell.seed;
                row.sigma2 = cell.sigma2;
                row.m_count = cell.m_count;
                row.outer_iter = std::nullopt;
                row.fisher = result.fisher_trace.back();
                row.crlb = result.crlb_trace.back();
                row.wall_time_ms = std::chrono::duration<double, std::milli>(stop - start).count();
                rows[i] = row;
            }
            catch (const std::exception &e)
            {
                throw std::runtime_error("run failed (seed=" + std::to_string(cell.seed) +
                                         ", sigma2=" + std::to_string(cell.sigma2) +
                                         ", m_count=" + std::to_string(cell.m_count) + "): " + e.what());
            }
        });
        return rows;
    }
}

std::vector<ResultRow> run_sigma_sweep(const ExperimentSpec &spec)
{
    if (spec.mode != SweepMode::sigma)
        throw std::invalid_argument("run_sigma_sweep: spec sweep mode is not 'sigma'");

    std::vector<Cell> cells;
    for (std::size_t k = 0; k < spec.n_seeds; ++k)
        for (double sigma2 : spec.sigma_values)
            for (arma::uword m : spec.m_counts)
                cells.push_back({spec.base_seed + k, sigma2, m});
    return run_cells_final(spec, cells);
}

std::vector<ResultRow> run_irs_count_sweep(const ExperimentSpec &spec)
{
    if (spec.mode != SweepMode::irs_count)
        throw std::invalid_argument("run_irs_count_sweep: spec sweep mode is not 'irs_count'");

    std::vector<Cell> cells;
    for (std::size_t k = 0; k < spec.n_seeds; ++k)
        for (arma::uword m : spec.m_counts)
            cells.push_back({spec.base_seed + k, spec.scene.noise_variance, m});
    return run_cells_final(spec, cells);
}

std::vector<ResultRow> run_trace(const ExperimentSpec &spec)
{
    if (spec.mode != SweepMode::trace)
        throw std::invalid_argument("run_trace: spec sweep mode is not 'trace'");

    const Cell cell{spec.base_seed, spec.scene.noise_variance,
                    static_cast<arma::uword>(spec.scene.irs_list.size())};

    const auto start = std::chrono::steady_clock::now();
    UberResult result;
    try
    {
        result = run_cell(spec, cell);
    }
    catch (const std::exception &e)
    {
        throw std::runtime_error("trace run failed (seed=" + std::to_string(cell.seed) +
                                 ", sigma2=" + std::to_string(cell.sigma2) + "): " + e.what());
    }
    const auto stop = std::chrono::steady_clock::now();
    const double ms = std::chrono::duration<double, std::milli>(stop - start).count();

    std::vector<ResultRow> rows;
    rows.reserve(result.crlb_trace.size());
    for (std::size_t t = 0; t < result.crlb_trace.size(); ++t)
    {
        ResultRow row;
        row.seed = cell.seed;
        row.sigma2 = cell.sigma2;
        row.m_count = cell.m_count;
        row.outer_iter = t;
        row.fisher = result.fisher_trace[t];
        row.crlb = result.crlb_trace[t];
        row.wall_time_ms = ms; // wall time of the producing run, repeated per row
        rows.push_back(row);
    }
    return rows;
}

std::vector<ResultRow> run_experiment(const ExperimentSpec &spec)
{
    switch (spec.mode)
    {
    case SweepMode::sigma:
        return run_sigma_sweep(spec);
    case SweepMode::irs_count:
        return run_irs_count_sweep(spec);
    case SweepMode::trace:
        return run_trace(spec);
    }
    throw std::logic_error("run_experiment: unhandled sweep mode");
}

// ---- CSV --------------------------------------------------------------------

namespace
{
    std::string format_double(double v)
    {
        char buf[40];
        const auto result = std::to_chars(buf, buf + sizeof(buf), v);
        return std::string(buf, result.ptr);
    }
}

std::string render_csv(const std::vector<ResultRow> &rows, bool zero_timing)
{
    std::string out = "seed,sigma2,m_count,outer_iter,fisher,crlb,wall_time_ms\n";
    for (const ResultRow &row : rows)
    {
        out += std::to_string(row.seed);
        out += ',';
        out += format_double(row.sigma2);
        out += ',';
        out += std::to_string(row.m_count);
        out += ',';
        out += row.outer_iter ? std::to_string(*row.outer_iter) : std::string("final");
        out += ',';
        out += format_double(row.fisher);
        out += ',';
        out += format_double(row.crlb);
        out += ',';
        out += format_double(zero_timing ? 0.0 : row.wall_time_ms);
        out += '\n';
    }
    return out;
}

void write_csv(const std::vector<ResultRow> &rows, const std::string &path, bool zero_timing)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open output file '" + path + "'");
    out << render_csv(rows, zero_timing);
    if (!out)
        throw std::runtime_error("failed writing output file '" + path + "'");
}

// ---- worker pool ------------------------------------------------------------

std::size_t worker_count()
{
    if (const char *env = std::getenv("UBER_WORKERS"))
    {
        char *end = nullptr;
        const unsigned long parsed = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && parsed >= 1)
            return static_cast<std::size_t>(parsed);
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? hc : 1;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)> &body)
{
    const std::size_t workers = std::min(worker_count(), count);
    if (workers <= 1)
    {
        for (std::size_t i = 0; i < count; ++i)
            body(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::mutex error_mutex;
    std::exception_ptr first_error;

    auto work = [&]() {
        while (!failed.load(std::memory_order_relaxed))
        {
            const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= count)
                break;
            try
            {
                body(i);
            }
            catch (...)
            {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error)
                    first_error = std::current_exception();
                failed.store(true, std::memory_order_relaxed);
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back(work);
    for (auto &t : pool)
        t.join();
    if (first_error)
        std::rethrow_exception(first_error);
}

}
