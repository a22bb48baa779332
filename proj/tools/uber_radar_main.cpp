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

#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "uber/experiment.hpp"

// Exit codes: 0 success, 1 validation/config error, 2 runtime failure,
// 3 property-suite failure.

namespace
{
    constexpr int kExitOk = 0;
    constexpr int kExitConfig = 1;
    constexpr int kExitRuntime = 2;
    constexpr int kExitProperties = 3;

    int do_run(const std::string &spec_path, const std::string &out_path, bool zero_timing)
    {
        const uber::ExperimentSpec spec = uber::load_spec(spec_path);
        if (spec.mode == uber::SweepMode::trace)
            throw std::invalid_argument("spec '" + spec_path + "' declares a trace sweep; use the trace subcommand");
        const auto rows = uber::run_experiment(spec);
        uber::write_csv(rows, out_path, zero_timing);
        std::cout << "wrote " << rows.size() << " rows to " << out_path << "\n";
        return kExitOk;
    }

    int do_trace(const std::string &spec_path, const std::string &out_path, bool zero_timing)
    {
        const uber::ExperimentSpec spec = uber::load_spec(spec_path);
        if (spec.mode != uber::SweepMode::trace)
            throw std::invalid_argument("spec '" + spec_path + "' does not declare a trace sweep; use the run subcommand");
        const auto rows = uber::run_trace(spec);
        uber::write_csv(rows, out_path, zero_timing);
        std::cout << "wrote " << rows.size() << " rows to " << out_path << "\n";
        return kExitOk;
    }

    int do_validate(bool quick)
    {
        uber::ValidationOptions options;
        options.quick = quick;
        const uber::ValidationReport report = uber::validate(options);
        std::cout << uber::format_report(report);
        return report.all_passed() ? kExitOk : kExitProperties;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"uber-radar: CRLB-driven joint design of unimodular MIMO radar waveforms\n"
                 "and multi-IRS phase shifts"};
    app.require_subcommand(1);

    std::string spec_path, out_path, template_name = "fig1";
    bool zero_timing = false, quick = false;

    auto *run_cmd = app.add_subcommand("run", "execute a sigma or irs_count sweep and write final-CRLB rows");
    run_cmd->add_option("--spec", spec_path, "experiment spec (JSON)")->required();
    run_cmd->add_option("--out", out_path, "output CSV path")->required();
    run_cmd->add_flag("--zero-timing", zero_timing, "write 0 in wall_time_ms for byte-reproducible output");

    auto *trace_cmd = app.add_subcommand("trace", "execute a single run and write one row per outer iteration");
    trace_cmd->add_option("--spec", spec_path, "experiment spec (JSON)")->required();
    trace_cmd->add_option("--out", out_path, "output CSV path")->required();
    trace_cmd->add_flag("--zero-timing", zero_timing, "write 0 in wall_time_ms for byte-reproducible output");

    auto *validate_cmd = app.add_subcommand("validate", "run the randomized property suite");
    validate_cmd->add_flag("--quick", quick, "reduced instance counts");

    auto *print_cmd = app.add_subcommand("print-spec", "print a bundled experiment spec template");
    print_cmd->add_option("--template", template_name, "template name (fig1, fig1a)")
        ->capture_default_str();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        return app.exit(e) == 0 ? kExitOk : kExitConfig;
    }

    try
    {
        if (run_cmd->parsed())
            return do_run(spec_path, out_path, zero_timing);
        if (trace_cmd->parsed())
            return do_trace(spec_path, out_path, zero_timing);
        if (validate_cmd->parsed())
            return do_validate(quick);
        if (print_cmd->parsed())
        {
            std::cout << uber::spec_template(template_name);
            return kExitOk;
        }
    }
    catch (const std::invalid_argument &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitConfig;
}
