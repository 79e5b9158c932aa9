#include "mwt/generate.hpp"
#include "mwt/io.hpp"
#include "mwt/pipeline.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

constexpr int exit_complete = 0;
constexpr int exit_error = 1;
constexpr int exit_partial = 2;

struct Common {
    double alpha = mwt::BaseAngleConfig::default_alpha;
    bool no_lmt_plus = false;
    unsigned threads = 1;
    int partition_depth = -1;
    std::string format = "auto";

    void add_to(CLI::App *app) {
        app->add_option("--alpha", alpha, "Diamond base angle in radians")->check(CLI::Range(1e-6, 1.0471975511965979));
        app->add_flag("--no-lmt-plus", no_lmt_plus, "Skip the LMT+ pass");
        app->add_option("--threads", threads, "Worker threads (0 = all cores)");
        app->add_option("--partition-depth", partition_depth, "Bisection depth (negative = default)");
        app->add_option("--format", format, "Input format")->check(CLI::IsMember({"auto", "tsplib", "xy"}));
    }

    mwt::PipelineOptions options(bool solve) const {
        mwt::PipelineOptions o;
        o.alpha = alpha;
        o.lmt_plus = !no_lmt_plus;
        o.threads = threads;
        o.partition_depth = partition_depth;
        o.solve_faces = solve;
        return o;
    }
};

std::string stem(const std::string &path) {
    const auto slash = path.find_last_of('/');
    std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
    const auto dot = base.find_last_of('.');
    return dot == std::string::npos || dot == 0 ? base : base.substr(0, dot);
}

void write_points(const std::string &out, const std::vector<mwt::Point> &pts) {
    if(out.empty() || out == "-") {
        mwt::write_points_xy(std::cout, pts);
        return;
    }
    std::ofstream f(out);
    if(!f)
        throw std::runtime_error(out + ": cannot open for writing");
    mwt::write_points_xy(f, pts);
}

std::vector<mwt::SvgEdge> skeleton_svg(const mwt::PipelineResult &r) {
    std::vector<mwt::SvgEdge> out;
    for(const auto &s : r.skeleton) {
        if(s.status == mwt::EdgeStatus::Impossible)
            continue;
        const mwt::SvgClass c = s.hull ? mwt::SvgClass::Hull
                                : s.status == mwt::EdgeStatus::Certain ? mwt::SvgClass::Certain
                                                                       : mwt::SvgClass::Possible;
        out.push_back({s.edge, c});
    }
    return out;
}

void print_summary(const mwt::StageStats &s, const char *verb) {
    std::fprintf(stderr,
                 "%s: n=%llu candidates=%llu possible=%llu/%llu certain=%llu/%llu faces simple=%llu nonsimple=%llu "
                 "weight=%.17g total=%.1f ms\n",
                 verb, static_cast<unsigned long long>(s.n), static_cast<unsigned long long>(s.cand_edges),
                 static_cast<unsigned long long>(s.possible_lmt), static_cast<unsigned long long>(s.possible_lmtp),
                 static_cast<unsigned long long>(s.certain_lmt), static_cast<unsigned long long>(s.certain_lmtp),
                 static_cast<unsigned long long>(s.faces_simple), static_cast<unsigned long long>(s.faces_nonsimple),
                 s.weight, s.ms_total);
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Exact minimum-weight triangulation of planar point sets"};
    app.require_subcommand(1);

    std::size_t n = 1000;
    std::uint64_t seed = 1;
    double extent = 1.0, sigma = 1.0;
    std::string out;

    auto *gu = app.add_subcommand("gen-uniform", "Uniform points in a square centred at the origin");
    gu->add_option("-n,--count", n, "Number of points")->check(CLI::PositiveNumber);
    gu->add_option("--seed", seed, "Random seed");
    gu->add_option("--extent", extent, "Side length of the square")->check(CLI::PositiveNumber);
    gu->add_option("-o,--output", out, "Output xy file (default stdout)");

    auto *gn = app.add_subcommand("gen-normal", "Points with N(0, sigma^2) coordinates");
    gn->add_option("-n,--count", n, "Number of points")->check(CLI::PositiveNumber);
    gn->add_option("--seed", seed, "Random seed");
    gn->add_option("--sigma", sigma, "Standard deviation")->check(CLI::PositiveNumber);
    gn->add_option("-o,--output", out, "Output xy file (default stdout)");

    Common common;
    std::string input, stats_path, svg_path;

    auto *solve = app.add_subcommand("solve", "Full pipeline; writes the triangulation edge list");
    solve->add_option("input", input, "Point file")->required()->check(CLI::ExistingFile);
    solve->add_option("-o,--output", out, "Edge list (default stdout)");
    solve->add_option("--stats", stats_path, "Stats CSV");
    solve->add_option("--svg", svg_path, "Render the triangulation");
    common.add_to(solve);

    auto *skel = app.add_subcommand("skeleton", "Stop before the DP; writes 'src dst status hull' per candidate");
    skel->add_option("input", input, "Point file")->required()->check(CLI::ExistingFile);
    skel->add_option("-o,--output", out, "Skeleton dump (default stdout)");
    skel->add_option("--stats", stats_path, "Stats CSV");
    skel->add_option("--svg", svg_path, "Render the skeleton");
    common.add_to(skel);

    std::string edges_path;
    auto *render = app.add_subcommand("render", "Render an edge list over its points as SVG");
    render->add_option("input", input, "Point file")->required()->check(CLI::ExistingFile);
    render->add_option("edges", edges_path, "Edge list written by solve")->required()->check(CLI::ExistingFile);
    render->add_option("-o,--output", out, "SVG file")->required();
    render->add_option("--format", common.format, "Input format")->check(CLI::IsMember({"auto", "tsplib", "xy"}));

    std::vector<std::string> inputs;
    auto *stats = app.add_subcommand("stats", "One stats CSV row per input");
    stats->add_option("inputs", inputs, "Point files")->required()->check(CLI::ExistingFile);
    stats->add_option("-o,--output", out, "CSV file (default stdout)");
    common.add_to(stats);

    try {
        app.parse(argc, argv);
    } catch(const CLI::ParseError &e) {
        return app.exit(e) == 0 ? exit_complete : exit_error;
    }

    try {
        if(gu->parsed()) {
            write_points(out, mwt::generate_uniform(n, seed, extent));
            return exit_complete;
        }
        if(gn->parsed()) {
            write_points(out, mwt::generate_normal(n, seed, sigma));
            return exit_complete;
        }
        const mwt::PointFormat fmt = mwt::parse_point_format(common.format);

        if(render->parsed()) {
            const auto pts = mwt::read_points(input, fmt);
            const auto ef = mwt::read_edges(edges_path);
            if(ef.n != pts.size())
                throw mwt::InputError(edges_path + ": edge list is for " + std::to_string(ef.n) + " points, " +
                                      input + " has " + std::to_string(pts.size()));
            std::vector<mwt::SvgEdge> edges;
            for(const auto &e : ef.edges)
                edges.push_back({e, mwt::SvgClass::Edge});
            mwt::write_svg(out, pts, edges);
            return exit_complete;
        }

        if(stats->parsed()) {
            std::vector<mwt::StageStats> rows;
            for(const auto &path : inputs) {
                const auto pts = mwt::read_points(path, fmt);
                auto r = mwt::run_pipeline(pts, common.options(true));
                r.stats.instance = stem(path);
                rows.push_back(r.stats);
            }
            if(out.empty() || out == "-")
                mwt::write_stats_csv(std::cout, rows);
            else
                mwt::write_stats_csv(out, rows);
            return exit_complete;
        }

        const bool solving = solve->parsed();
        const auto pts = mwt::read_points(input, fmt);
        auto r = mwt::run_pipeline(pts, common.options(solving));
        r.stats.instance = stem(input);
        print_summary(r.stats, solving ? "solve" : "skeleton");

        std::ofstream file;
        if(!out.empty() && out != "-") {
            file.open(out);
            if(!file)
                throw std::runtime_error(out + ": cannot open for writing");
        }
        std::ostream &os = file.is_open() ? static_cast<std::ostream &>(file) : std::cout;
        if(solving) {
            mwt::EdgeFile ef;
            ef.n = static_cast<std::uint32_t>(pts.size());
            ef.weight = r.stats.weight;
            ef.edges = r.edges;
            mwt::write_edges(os, ef);
        } else {
            for(const auto &s : r.skeleton)
                os << s.edge.a << ' ' << s.edge.b << ' ' << mwt::to_string(s.status) << ' ' << (s.hull ? 1 : 0)
                   << '\n';
        }
        if(!os)
            throw std::runtime_error("write failed");

        if(!stats_path.empty())
            mwt::write_stats_csv(stats_path, std::span<const mwt::StageStats>(&r.stats, 1));
        if(!svg_path.empty()) {
            if(solving) {
                std::vector<mwt::SvgEdge> edges;
                for(const auto &e : r.edges)
                    edges.push_back({e, mwt::SvgClass::Edge});
                mwt::write_svg(svg_path, pts, edges);
            } else {
                mwt::write_svg(svg_path, pts, skeleton_svg(r));
            }
        }
        if(!r.complete && solving) {
            std::fprintf(stderr, "partial: %llu non-simple face(s) left untriangulated\n",
                         static_cast<unsigned long long>(r.stats.faces_nonsimple));
            return exit_partial;
        }
        if(!solving && r.stats.faces_nonsimple > 0)
            return exit_partial;
        return exit_complete;
    } catch(const std::exception &e) {
        std::fprintf(stderr, "mwt: %s\n", e.what());
        return exit_error;
    }
}
