#pragma once

#include "mwt/halfedge.hpp"
#include "mwt/spatial.hpp"

#include <atomic>
#include <cstdint>
#include <memory>
#include <vector>

namespace mwt {

enum class ScanResult { Found, Exhausted };

struct LmtOptions {
    /// Reject candidate triangles with an input point strictly inside.
    /// Without it, triangles are accepted as Advance returns them.
    bool exact_triangles = true;
};

/// Edge ids pending (re)examination; each id at most once.
class WorkStack {
  public:
    void push(HalfEdgeGraph &g, std::uint32_t e) {
        if(g.on_stack(e))
            return;
        g.set_on_stack(e, true);
        items_.push_back(e);
    }
    bool empty() const { return items_.empty(); }
    std::size_t size() const { return items_.size(); }
    std::uint32_t pop(HalfEdgeGraph &g) {
        const std::uint32_t e = items_.back();
        items_.pop_back();
        g.set_on_stack(e, false);
        return e;
    }

  private:
    std::vector<std::uint32_t> items_;
};

/// Debug aid for parallel runs: records which task owns each vertex and
/// counts mutations of edges whose endpoints the mutating task does not own.
class OwnershipChecker {
  public:
    explicit OwnershipChecker(std::uint32_t n) : owner_(std::make_unique<std::atomic<int>[]>(n)), n_(n) {
        for(std::uint32_t v = 0; v < n; ++v)
            owner_[v].store(-1, std::memory_order_relaxed);
    }
    void claim(std::uint32_t lo, std::uint32_t hi, int task) {
        for(std::uint32_t v = lo; v < hi; ++v)
            owner_[v].store(task, std::memory_order_relaxed);
    }
    void check(const HalfEdgeGraph &g, std::uint32_t e, int task) {
        const std::uint32_t h = g.primary(e);
        if(owner_[g.source(h)].load(std::memory_order_relaxed) != task ||
           owner_[g.target(h)].load(std::memory_order_relaxed) != task)
            violations_.fetch_add(1, std::memory_order_relaxed);
    }
    std::uint64_t violations() const { return violations_.load(); }
    std::uint32_t size() const { return n_; }

  private:
    std::unique_ptr<std::atomic<int>[]> owner_;
    std::uint32_t n_;
    std::atomic<std::uint64_t> violations_{0};
};

struct LmtCounters {
    std::uint64_t processed = 0;
    std::uint64_t killed = 0;
    std::uint64_t restacked = 0;
    std::uint64_t triangle_checks = 0;
    std::uint64_t nonempty_triangles = 0;
};

/// LMT-skeleton machinery over a half-edge graph whose vertex ids index the
/// point array the tree was built on.
class LmtEngine {
  public:
    LmtEngine(HalfEdgeGraph &g, const QuadTree *tree, LmtOptions opts = {});

    HalfEdgeGraph &graph() { return g_; }
    const LmtCounters &counters() const { return counters_; }

    /// Moves (i, j) counter-clockwise, skipping Impossible edges, until they
    /// meet at a common apex left of h or leave its left side. A Found state
    /// is returned unchanged.
    ScanResult settle(std::uint32_t h, std::uint32_t &i, std::uint32_t &j);

    /// Steps past the current apex of h's stored scan and settles again.
    ScanResult advance(std::uint32_t h);

    /// Resumes the two-sided scan of edge e from its stored state. True when
    /// a certificate is found; the scan then rests on it.
    bool find_certificate(std::uint32_t e);

    /// Pushes examined, non-hull edges at either endpoint of the dead edge e
    /// whose current certificate contains e.
    void restack(std::uint32_t e, WorkStack &stack);

    /// Examines e, marking it Impossible and restacking when no
    /// certificate exists. Hull and Impossible edges are left alone.
    void process(std::uint32_t e, WorkStack &stack);

    void drain(WorkStack &stack);

    /// Processes unexamined edges with both endpoints in [lo, hi) in CSR
    /// order, draining after each. Edges leaving the range go to `deferred`.
    void sweep(std::uint32_t lo, std::uint32_t hi, std::vector<std::uint32_t> *deferred);

    /// Serial LMT loop over the whole graph.
    void run();

    /// Stricter pass run after the LMT fixpoint: each surviving edge needs a
    /// certificate whose four sides have certificates sharing one of its
    /// triangles. Scans restart from scratch.
    void run_plus();

    /// True iff a -> b (the half-edge h) has an apex d on its left such that
    /// triangles abd and bac form a certificate for ab. c lies right of h.
    bool has_certificate_with(std::uint32_t h, std::uint32_t c);

    void attach_checker(OwnershipChecker *checker, int task) {
        checker_ = checker;
        task_ = task;
    }

  private:
    bool triangle_usable(std::uint32_t a, std::uint32_t b, std::uint32_t c);
    bool locally_minimal(std::uint32_t s, std::uint32_t t, std::uint32_t v, std::uint32_t w) const;
    bool plus_certified(std::uint32_t e);
    bool strictly_left(std::uint32_t a, std::uint32_t b, std::uint32_t p) const;
    void note_mutation(std::uint32_t e) {
        if(checker_)
            checker_->check(g_, e, task_);
    }

    HalfEdgeGraph &g_;
    const QuadTree *tree_;
    LmtOptions opts_;
    LmtCounters counters_;
    OwnershipChecker *checker_ = nullptr;
    int task_ = 0;
};

/// Marks Certain every hull edge and every Possible edge crossed by no
/// non-Impossible edge. Returns the number of edges newly marked.
std::uint32_t mark_certain_pass(HalfEdgeGraph &g);

/// 3n - |CH| - 3 for the graph's point set, given its hull edge count.
std::uint64_t triangulation_edge_count(std::uint32_t n, std::uint32_t hull_edges);

} // namespace mwt
