#include "tinvit/parallel.hpp"

#include <cstdlib>
#include <string>
#include <utility>

namespace tinvit {

ThreadPool::ThreadPool(std::size_t threads) {
    const std::size_t extra = threads > 1 ? threads - 1 : 0;
    workers_.reserve(extra);
    for (std::size_t i = 0; i < extra; ++i) workers_.emplace_back([this] { worker_loop(); });
}

ThreadPool::~ThreadPool() {
    {
        std::lock_guard lock(mutex_);
        stop_ = true;
    }
    wake_.notify_all();
    for (auto& w : workers_) w.join();
}

void ThreadPool::drain() {
    for (;;) {
        std::size_t task;
        {
            std::lock_guard lock(mutex_);
            if (next_task_ >= tasks_) return;
            task = next_task_++;
        }
        try {
            (*job_)(task);
        } catch (...) {
            std::lock_guard lock(mutex_);
            if (!error_) error_ = std::current_exception();
        }
    }
}

void ThreadPool::run(std::size_t tasks, const std::function<void(std::size_t)>& body) {
    if (tasks == 0) return;
    if (workers_.empty() || tasks == 1) {
        for (std::size_t t = 0; t < tasks; ++t) body(t);
        return;
    }
    {
        std::lock_guard lock(mutex_);
        job_ = &body;
        tasks_ = tasks;
        next_task_ = 0;
        busy_workers_ = workers_.size();
        error_ = nullptr;
        ++generation_;
    }
    wake_.notify_all();
    drain();

    std::unique_lock lock(mutex_);
    done_.wait(lock, [this] { return busy_workers_ == 0; });
    job_ = nullptr;
    if (error_) std::rethrow_exception(std::exchange(error_, nullptr));
}

void ThreadPool::worker_loop() {
    std::uint64_t seen = 0;
    for (;;) {
        {
            std::unique_lock lock(mutex_);
            wake_.wait(lock, [&] { return stop_ || generation_ != seen; });
            if (stop_) return;
            seen = generation_;
        }
        drain();
        {
            std::lock_guard lock(mutex_);
            if (--busy_workers_ == 0) done_.notify_one();
        }
    }
}

std::size_t default_thread_count() {
    if (const char* env = std::getenv("TINVIT_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v >= 1) return static_cast<std::size_t>(v);
        } catch (const std::exception&) {
        }
    }
    return 1;
}

}  // namespace tinvit
