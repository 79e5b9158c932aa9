#include "mwt/partition.hpp"

#include <algorithm>
#include <bit>
#include <memory>
#include <thread>
#include <vector>

namespace mwt {

namespace {

void add(LmtCounters &into, const LmtCounters &c) {
    into.processed += c.processed;
    into.killed += c.killed;
    into.restacked += c.restacked;
    into.triangle_checks += c.triangle_checks;
    into.nonempty_triangles += c.nonempty_triangles;
}

class Partitioner {
  public:
    Partitioner(HalfEdgeGraph &g, const QuadTree *tree, const LmtOptions &lmt, int depth, unsigned threads,
                OwnershipChecker *checker)
        : g_(g), tree_(tree), lmt_(lmt), depth_(depth), threads_(threads), checker_(checker),
          counters_(std::size_t{2} << depth) {}

    std::uint64_t run() {
        std::uint64_t root = 0;
        solve(0, g_.num_vertices(), 0, 1, &root);
        return root;
    }

    LmtCounters counters() const {
        LmtCounters total;
        for(const auto &c : counters_)
            add(total, c);
        return total;
    }

  private:
    std::vector<std::uint32_t> solve(std::uint32_t lo, std::uint32_t hi, int level, std::uint32_t task,
                                     std::uint64_t *root_received) {
        LmtEngine eng(g_, tree_, lmt_);
        if(checker_)
            eng.attach_checker(checker_, static_cast<int>(task));
        std::vector<std::uint32_t> deferred;
        if(level == depth_ || hi - lo < 2) {
            if(checker_)
                checker_->claim(lo, hi, static_cast<int>(task));
            eng.sweep(lo, hi, &deferred);
            add(counters_[task], eng.counters());
            return deferred;
        }

        const std::uint32_t mid = lo + (hi - lo) / 2;
        std::vector<std::uint32_t> left, right;
        if((1u << level) < threads_) {
            std::thread worker([&] { left = solve(lo, mid, level + 1, 2 * task, nullptr); });
            right = solve(mid, hi, level + 1, 2 * task + 1, nullptr);
            worker.join();
        } else {
            left = solve(lo, mid, level + 1, 2 * task, nullptr);
            right = solve(mid, hi, level + 1, 2 * task + 1, nullptr);
        }

        if(checker_)
            checker_->claim(lo, hi, static_cast<int>(task));
        left.insert(left.end(), right.begin(), right.end());
        if(root_received)
            *root_received = left.size();
        WorkStack stack;
        for(const std::uint32_t e : left) {
            const std::uint32_t p = g_.primary(e);
            const std::uint32_t s = g_.source(p), t = g_.target(p);
            if(s < lo || s >= hi || t < lo || t >= hi) {
                deferred.push_back(e);
                continue;
            }
            if(g_.examined(e))
                continue;
            eng.process(e, stack);
            eng.drain(stack);
        }
        add(counters_[task], eng.counters());
        return deferred;
    }

    HalfEdgeGraph &g_;
    const QuadTree *tree_;
    LmtOptions lmt_;
    int depth_;
    unsigned threads_;
    OwnershipChecker *checker_;
    std::vector<LmtCounters> counters_;
};

} // namespace

int default_partition_depth(unsigned threads) {
    if(threads <= 1)
        return 1;
    return static_cast<int>(std::bit_width(threads - 1)) + 1;
}

PartitionStats parallel_lmt(HalfEdgeGraph &g, const QuadTree *tree, const LmtOptions &lmt,
                            const PartitionOptions &opts) {
    PartitionStats st;
    st.threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
    st.edges = g.num_edges();
    st.depth = opts.max_depth >= 0 ? opts.max_depth : default_partition_depth(st.threads);

    if(st.threads == 1 && opts.max_depth < 0)
        st.depth = 0;
    if(st.depth == 0) {
        LmtEngine eng(g, tree, lmt);
        eng.run();
        st.counters = eng.counters();
        return st;
    }

    std::unique_ptr<OwnershipChecker> checker;
    if(opts.check_ownership)
        checker = std::make_unique<OwnershipChecker>(g.num_vertices());
    Partitioner part(g, tree, lmt, st.depth, st.threads, checker.get());
    st.root_deferred = part.run();
    st.counters = part.counters();
    if(checker)
        st.ownership_violations = checker->violations();
    return st;
}

} // namespace mwt
