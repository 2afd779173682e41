#pragma once

#include <condition_variable>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace tinvit {

/// Fixed-size worker pool for fork-join row-block kernels.
///
/// `run(tasks, body)` calls body(0..tasks-1) across the workers and the
/// calling thread and returns when all have finished. One run is one
/// barrier. Not reentrant: a task body must not call run on the same pool.
class ThreadPool {
public:
    /// `threads` counts the calling thread; threads == 1 spawns no workers.
    explicit ThreadPool(std::size_t threads);
    ~ThreadPool();

    ThreadPool(const ThreadPool&) = delete;
    ThreadPool& operator=(const ThreadPool&) = delete;

    std::size_t size() const noexcept { return workers_.size() + 1; }

    void run(std::size_t tasks, const std::function<void(std::size_t)>& body);

private:
    void worker_loop();
    void drain();

    std::vector<std::thread> workers_;
    std::mutex mutex_;
    std::condition_variable wake_;
    std::condition_variable done_;
    const std::function<void(std::size_t)>* job_ = nullptr;
    std::size_t tasks_ = 0;
    std::size_t next_task_ = 0;
    std::size_t busy_workers_ = 0;
    std::uint64_t generation_ = 0;
    std::exception_ptr error_;
    bool stop_ = false;
};

/// Thread count from the TINVIT_THREADS environment variable, else 1.
std::size_t default_thread_count();

}  // namespace tinvit
