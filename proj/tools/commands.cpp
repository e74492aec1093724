// Copyright 2026 The tristereo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "commands.hpp"

#include "tristereo/errors.hpp"
#include "tristereo/evaluation.hpp"
#include "tristereo/imaging.hpp"
#include "tristereo/pipeline.hpp"
#include "tristereo/scenegen.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

namespace tristereo::app {

namespace {

namespace fs = std::filesystem;

std::string frame_tag(int frame) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "f%04d", frame);
    return buf;
}

void write_text_atomic(const fs::path& path, const std::string& text) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError("cannot open " + tmp.string() + " for writing");
        }
        out << text;
        if (!out) {
            throw IoError("write failure on " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        throw IoError("cannot rename " + tmp.string() + ": " + ec.message());
    }
}

struct Frame {
    LumaImage center, left, right;
};

Frame load_triple(const ViewTriple& t, int frame) {
    return Frame{load_image(t.center.at(frame)), load_image(t.left.at(frame)), load_image(t.right.at(frame))};
}

std::function<void(const ExpansionMove&)> move_logger(spdlog::logger& log, std::string tag) {
    if (!log.should_log(spdlog::level::trace)) {
        return {};
    }
    return [&log, tag = std::move(tag)](const ExpansionMove& mv) {
        log.trace("{} sweep={} label={} energy_before={} energy_after={} accepted={}", tag, mv.sweep, mv.label,
                  mv.energy_before, mv.energy_after, mv.accepted);
    };
}

nlohmann::json diagnostics_json(const PipelineResult& r) {
    nlohmann::json j;
    j["occlusion_penalty"] = r.occlusion_penalty;
    j["converged"] = r.converged;
    for (const auto& d : r.iterations) {
        j["iterations"].push_back({{"iteration", d.iteration},
                                   {"energy", d.energy},
                                   {"wta_energy", d.wta_energy},
                                   {"changed_pixels", d.changed_pixels},
                                   {"occluded_candidates", d.occluded_candidates},
                                   {"occluded_both", d.occluded_both},
                                   {"sweeps", d.sweeps}});
    }
    return j;
}

struct GroundTruthFrame {
    DisparityMap gt;
    EvalMasks masks;
};

GroundTruthFrame load_ground_truth_frame(const GroundTruthInput& in, int frame, int precision) {
    GroundTruthFrame out;
    out.gt = load_ground_truth(in.disparity.at(frame), in.scale, precision, in.zero_is_unknown);
    const PixelMask everything(out.gt.width(), out.gt.height(), true);
    out.masks.nonocc = in.nonocc ? load_mask(in.nonocc->at(frame)) : everything;
    out.masks.all = in.all ? load_mask(in.all->at(frame)) : everything;
    out.masks.disc = in.disc ? load_mask(in.disc->at(frame)) : discontinuity_mask(out.gt);
    return out;
}

std::string lambda_tag(double lambda) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "l%.2f", lambda);
    return buf;
}

} // namespace

// ---------------------------------------------------------------------------

void cmd_estimate(const RunManifest& m, spdlog::logger& log) {
    check_inputs_exist(m, true);
    fs::create_directories(m.output_dir);
    for (int f : m.frame_numbers()) {
        const Frame frame = load_triple(m.input, f);
        const auto start = std::chrono::steady_clock::now();
        const PipelineResult r =
            run_pipeline(frame.center, frame.left, frame.right, m.pipeline, move_logger(log, frame_tag(f)));
        const double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        const std::string stem = m.name + "_" + frame_tag(f);
        save_disparity(r.disparity, m.output_dir / (stem + "_disparity.pgm"), m.output_scale());
        write_text_atomic(m.output_dir / (stem + "_diagnostics.json"), diagnostics_json(r).dump(2) + "\n");
        for (const auto& d : r.iterations) {
            log.debug("{} iteration={} energy={:.3f} wta_energy={:.3f} changed={} occluded={:.4f}", stem, d.iteration,
                      d.energy, d.wta_energy, d.changed_pixels, d.occluded_candidates);
        }
        log.info("{}: {} iteration(s) in {:.0f} ms", stem, r.iterations.size(), ms);
    }
}

std::vector<SweepRow> cmd_sweep(const RunManifest& m, spdlog::logger& log) {
    if (!m.ground_truth && !m.synthesis) {
        throw ConfigError("sweep needs [ground_truth] and/or [synthesis]");
    }
    check_inputs_exist(m, true);
    fs::create_directories(m.output_dir);

    const auto frame_ids = m.frame_numbers();
    std::vector<Frame> frames_a, frames_b;
    std::vector<LumaImage> references;
    for (int f : frame_ids) {
        frames_a.push_back(load_triple(m.input, f));
        if (m.synthesis) {
            frames_b.push_back(load_triple(m.synthesis->b, f));
            references.push_back(load_image(m.synthesis->reference.at(f)));
        }
    }

    struct Cell {
        CostModel mode;
        int precision;
        double lambda;
    };
    std::vector<Cell> cells;
    for (auto mode : m.sweep.modes) {
        for (int p : m.sweep.precisions) {
            for (double l : m.sweep.lambdas) {
                cells.push_back({mode, p, l});
            }
        }
    }

    std::vector<SweepRow> rows(cells.size());
    auto run_cell = [&](std::size_t index) {
        const Cell& c = cells[index];
        PipelineConfig cfg = m.pipeline;
        cfg.model = c.mode;
        cfg.match.precision = c.precision;
        cfg.energy.smoothing_coefficient = c.lambda;
        cfg.debug_dir.reset();
        const fs::path cell_dir = m.output_dir / "maps" /
                                  (std::string(to_string(c.mode)) + "_p" + std::to_string(c.precision) + "_" +
                                   lambda_tag(c.lambda));
        fs::create_directories(cell_dir);

        SweepRow row;
        row.sequence = m.name;
        row.mode = std::string(to_string(c.mode));
        row.precision = c.precision;
        row.lambda = c.lambda;
        std::vector<double> psnrs;
        double nonocc = 0, all = 0, disc = 0;
        const auto start = std::chrono::steady_clock::now();
        for (std::size_t i = 0; i < frame_ids.size(); ++i) {
            const std::string tag = m.name + "_" + frame_tag(frame_ids[i]);
            const auto& fa = frames_a[i];
            const DisparityMap da = run_pipeline(fa.center, fa.left, fa.right, cfg, move_logger(log, tag + "_A"))
                                        .disparity;
            save_disparity(da, cell_dir / (tag + "_A.pgm"), m.output_scale());
            if (m.ground_truth) {
                const auto gt = load_ground_truth_frame(*m.ground_truth, frame_ids[i], c.precision);
                const auto rep = bad_pixel_rates(da, gt.gt, gt.masks, m.ground_truth->threshold);
                nonocc += rep.nonocc;
                all += rep.all;
                disc += rep.disc;
            }
            if (m.synthesis) {
                const auto& fb = frames_b[i];
                const DisparityMap db =
                    run_pipeline(fb.center, fb.left, fb.right, cfg, move_logger(log, tag + "_B")).disparity;
                save_disparity(db, cell_dir / (tag + "_B.pgm"), m.output_scale());
                const double ratio = m.synthesis->baseline_ratio;
                const LumaImage v = synthesize_view(fa.center, scale_disparity(da, ratio), fb.center,
                                                    scale_disparity(db, ratio), m.synthesis->alpha);
                psnrs.push_back(psnr_luma(v, references[i]));
            }
        }
        const double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        const double n = static_cast<double>(frame_ids.size());
        if (m.ground_truth) {
            row.bad_nonocc = nonocc / n;
            row.bad_all = all / n;
            row.bad_disc = disc / n;
        }
        if (m.synthesis) {
            row.psnr_db = summarize_psnr(psnrs).psnr_luma;
        }
        if (m.sweep.record_runtime) {
            row.runtime_ms = ms;
        }
        log.info("cell mode={} precision={} lambda={} psnr={} nonocc={} ({:.0f} ms)", row.mode, row.precision,
                 row.lambda, row.psnr_db ? std::to_string(*row.psnr_db) : "-",
                 row.bad_nonocc ? std::to_string(*row.bad_nonocc) : "-", ms);
        rows[index] = std::move(row);
    };

    const int workers = std::min<int>(m.sweep.workers, static_cast<int>(cells.size()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            run_cell(i);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                try {
                    for (std::size_t i = next++; i < cells.size(); i = next++) {
                        run_cell(i);
                    }
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) {
                        failure = std::current_exception();
                    }
                }
            });
        }
        for (auto& t : pool) {
            t.join();
        }
        if (failure) {
            std::rethrow_exception(failure);
        }
    }

    std::ostringstream csv;
    write_sweep_csv(csv, rows);
    write_text_atomic(m.output_dir / "sweep.csv", csv.str());

    const auto best = best_over_lambda(rows);
    std::ostringstream summary;
    write_sweep_csv(summary, best);
    write_text_atomic(m.output_dir / "summary.csv", summary.str());
    const std::string table = format_results_table(best);
    write_text_atomic(m.output_dir / "summary.txt", table);
    log.info("best over lambda:\n{}", table);
    return rows;
}

void cmd_evaluate(const RunManifest& m, spdlog::logger& log) {
    if (!m.evaluate.disparity && !m.evaluate.image) {
        throw ConfigError("[evaluate] needs 'disparity' and/or 'image'");
    }
    if (m.evaluate.disparity && !m.ground_truth) {
        throw ConfigError("[evaluate] disparity needs a [ground_truth] section");
    }
    if (m.evaluate.image && !m.synthesis) {
        throw ConfigError("[evaluate] image needs a [synthesis] reference");
    }
    check_inputs_exist(m, false);
    fs::create_directories(m.output_dir);
    std::ostringstream report;
    report << "frame,metric,value\n";
    for (int f : m.frame_numbers()) {
        if (m.evaluate.disparity) {
            const auto gt = load_ground_truth_frame(*m.ground_truth, f, 4);
            if (!(m.evaluate.disparity_scale > 0.0)) {
                throw ConfigError("[evaluate] disparity_scale must be positive");
            }
            const auto est = load_ground_truth(m.evaluate.disparity->at(f), m.evaluate.disparity_scale, 4, false);
            const auto rep = bad_pixel_rates(est, gt.gt, gt.masks, m.ground_truth->threshold);
            report << f << ",bad_nonocc," << rep.nonocc << '\n'
                   << f << ",bad_all," << rep.all << '\n'
                   << f << ",bad_disc," << rep.disc << '\n';
            log.info("frame {}: nonocc {:.2f}% all {:.2f}% disc {:.2f}%", f, rep.nonocc, rep.all, rep.disc);
        }
        if (m.evaluate.image) {
            const double db = psnr_luma(load_image(m.evaluate.image->at(f)), load_image(m.synthesis->reference.at(f)));
            report << f << ",psnr_db," << db << '\n';
            log.info("frame {}: PSNR {:.2f} dB", f, db);
        }
    }
    write_text_atomic(m.output_dir / "evaluation.txt", report.str());
}

void cmd_scene(const fs::path& spec_path, std::uint64_t seed, const fs::path& out_dir, spdlog::logger& log) {
    const SceneSpec spec = load_scene_spec(spec_path);
    const SceneViews views = render_scene(spec, seed);
    write_scene(views, spec.gt_scale, out_dir);
    log.info("scene {}x{} with {} layer(s) written to {}", spec.width, spec.height, spec.layers.size(),
             out_dir.string());
}

// ---------------------------------------------------------------------------

int run_cli(int argc, char** argv) {
    CLI::App app{"Three-view occlusion-aware disparity estimation"};
    app.require_subcommand(1);
    std::string log_level;
    app.add_option("--log-level", log_level, "trace, debug, info, warn, error or off (env TRISTEREO_LOG_LEVEL)");

    std::string manifest_path;
    auto* estimate = app.add_subcommand("estimate", "Estimate disparity for every input frame");
    estimate->add_option("manifest", manifest_path, "Run manifest")->required();
    auto* sweep = app.add_subcommand("sweep", "Evaluate a mode x precision x lambda grid");
    sweep->add_option("manifest", manifest_path, "Run manifest")->required();
    auto* evaluate = app.add_subcommand("evaluate", "Score stored results");
    evaluate->add_option("manifest", manifest_path, "Run manifest")->required();

    std::string spec_path, out_dir = "scene";
    std::uint64_t seed = 1;
    auto* scene = app.add_subcommand("scene", "Render a synthetic three-view scene");
    scene->add_option("spec", spec_path, "Scene spec (key = value)")->required();
    scene->add_option("--seed", seed, "Texture and noise seed");
    scene->add_option("--out", out_dir, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    auto log = spdlog::get("tristereo");
    if (!log) {
        log = spdlog::stderr_color_mt("tristereo");
    }
    if (log_level.empty()) {
        if (const char* env = std::getenv("TRISTEREO_LOG_LEVEL")) {
            log_level = env;
        }
    }
    log->set_level(log_level.empty() ? spdlog::level::info : spdlog::level::from_str(log_level));

    try {
        if (*scene) {
            cmd_scene(spec_path, seed, out_dir, *log);
            return kExitOk;
        }
        const RunManifest m = load_manifest(manifest_path);
        if (*estimate) {
            cmd_estimate(m, *log);
        } else if (*sweep) {
            cmd_sweep(m, *log);
        } else if (*evaluate) {
            cmd_evaluate(m, *log);
        }
        return kExitOk;
    } catch (const ConfigError& e) {
        log->error("configuration error: {}", e.what());
        return kExitUsage;
    } catch (const IoError& e) {
        log->error("I/O error: {}", e.what());
        return kExitIo;
    } catch (const FormatError& e) {
        log->error("I/O error: {}", e.what());
        return kExitIo;
    } catch (const UnsupportedError& e) {
        log->error("I/O error: {}", e.what());
        return kExitIo;
    } catch (const std::filesystem::filesystem_error& e) {
        log->error("I/O error: {}", e.what());
        return kExitIo;
    } catch (const std::exception& e) {
        log->error("internal error: {}", e.what());
        return kExitInternal;
    }
}

} // namespace tristereo::app
