#include "mwt/pipeline.hpp"

#include "mwt/lmt.hpp"
#include "mwt/partition.hpp"
#include "mwt/polygon.hpp"
#include "mwt/spatial.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <thread>

namespace mwt {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t) { return std::chrono::duration<double, std::milli>(Clock::now() - t).count(); }

Edge to_input(const HilbertOrderedPointSet &h, std::uint32_t a, std::uint32_t b) {
    a = h.original_index[a];
    b = h.original_index[b];
    return {std::min(a, b), std::max(a, b)};
}

std::uint64_t count_possible(const HalfEdgeGraph &g) { return g.count(EdgeStatus::Possible); }
std::uint64_t count_certain(const HalfEdgeGraph &g) { return g.count(EdgeStatus::Certain); }

} // namespace

PipelineResult run_pipeline(std::span<const Point> points, const PipelineOptions &opts) {
    if(points.size() < 3)
        throw std::invalid_argument("a triangulation needs at least 3 points");
    const unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
    const auto start = Clock::now();
    PipelineResult r;
    StageStats &st = r.stats;
    st.n = points.size();
    st.alpha = opts.alpha;
    const BaseAngleConfig cfg(opts.alpha);

    auto t = Clock::now();
    const HilbertOrderedPointSet h = hilbert_sort(points);
    const QuadTree tree(h);
    const CandidateEdgeSet cand = candidate_edges(h, tree, cfg);
    st.cand_edges = cand.edges.size();
    st.ms_dt = ms_since(t);

    t = Clock::now();
    HalfEdgeGraph g(h.points, cand);
    st.hull_edges = mark_hull_edges(g);
    st.ms_init = ms_since(t);

    t = Clock::now();
    const LmtOptions lmt{opts.exact_triangles};
    PartitionOptions popts;
    popts.threads = threads;
    popts.max_depth = opts.partition_depth;
    const PartitionStats ps = parallel_lmt(g, &tree, lmt, popts);
    st.root_deferred = ps.root_deferred;
    mark_certain_pass(g);
    st.possible_lmt = count_possible(g);
    st.certain_lmt = count_certain(g);
    st.ms_loop = ms_since(t);

    t = Clock::now();
    if(opts.lmt_plus) {
        LmtEngine eng(g, &tree, lmt);
        eng.run_plus();
        mark_certain_pass(g);
    }
    st.possible_lmtp = count_possible(g);
    st.certain_lmtp = count_certain(g);
    st.ms_lmtp = ms_since(t);

    t = Clock::now();
    const auto faces = extract_faces(g, tree);
    std::vector<FaceSolution> solutions;
    if(opts.solve_faces)
        solutions = triangulate_faces(faces, h.points, threads);
    else
        solutions.resize(faces.size());
    const TriangulationResult tri = assemble(g, faces, solutions);
    st.faces_simple = tri.faces_simple;
    st.faces_nonsimple = tri.faces_nonsimple;
    st.faces_triangles = tri.faces_triangles;
    st.weight = tri.weight;
    st.ms_dp = ms_since(t);

    r.complete = opts.solve_faces && tri.complete;
    r.edges.reserve(tri.edges.size());
    for(const Edge &e : tri.edges)
        r.edges.push_back(to_input(h, e.a, e.b));
    std::sort(r.edges.begin(), r.edges.end());

    r.skeleton.reserve(g.num_edges());
    for(std::uint32_t e = 0; e < g.num_edges(); ++e) {
        const std::uint32_t p = g.primary(e);
        r.skeleton.push_back({to_input(h, g.source(p), g.target(p)), g.status(e), g.hull(e)});
    }
    std::sort(r.skeleton.begin(), r.skeleton.end(),
              [](const SkeletonEdge &a, const SkeletonEdge &b) { return a.edge < b.edge; });

    st.ms_total = ms_since(start);
    return r;
}

const char *stats_csv_header() {
    return "instance,n,alpha,cand_edges,possible_lmt,certain_lmt,possible_lmtp,certain_lmtp,faces_simple,"
           "faces_nonsimple,weight,ms_dt,ms_init,ms_loop,ms_lmtp,ms_dp,ms_total";
}

std::string stats_csv_row(const StageStats &s) {
    std::string name = s.instance;
    if(name.find_first_of(",\"\n") != std::string::npos) {
        std::string q = "\"";
        for(const char c : name) {
            if(c == '"')
                q += '"';
            q += c;
        }
        name = q + "\"";
    }
    char buf[512];
    std::snprintf(buf, sizeof buf, ",%llu,%.17g,%llu,%llu,%llu,%llu,%llu,%llu,%llu,%.17g,%.3f,%.3f,%.3f,%.3f,%.3f,%.3f",
                  static_cast<unsigned long long>(s.n), s.alpha, static_cast<unsigned long long>(s.cand_edges),
                  static_cast<unsigned long long>(s.possible_lmt), static_cast<unsigned long long>(s.certain_lmt),
                  static_cast<unsigned long long>(s.possible_lmtp), static_cast<unsigned long long>(s.certain_lmtp),
                  static_cast<unsigned long long>(s.faces_simple), static_cast<unsigned long long>(s.faces_nonsimple),
                  s.weight, s.ms_dt, s.ms_init, s.ms_loop, s.ms_lmtp, s.ms_dp, s.ms_total);
    return name + buf;
}

void write_stats_csv(std::ostream &out, std::span<const StageStats> rows) {
    out << stats_csv_header() << '\n';
    for(const StageStats &s : rows)
        out << stats_csv_row(s) << '\n';
}

void write_stats_csv(const std::string &path, std::span<const StageStats> rows) {
    std::ofstream out(path);
    if(!out)
        throw std::runtime_error(path + ": cannot open for writing");
    write_stats_csv(out, rows);
    if(!out)
        throw std::runtime_error(path + ": write failed");
}

} // namespace mwt
