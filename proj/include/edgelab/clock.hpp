// Copyright 2026 The edgelab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EDGELAB_CLOCK_HPP_
#define EDGELAB_CLOCK_HPP_

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <deque>
#include <functional>
#include <list>
#include <mutex>
#include <thread>

namespace edgelab {

using Duration = std::chrono::nanoseconds;
using TimePoint = std::chrono::steady_clock::time_point;

namespace sim {
class Scheduler;
}

// Time source used by everything that waits: upstream fetches, cold starts,
// worker handling cost and load generation. Swapping SystemClock for
// VirtualClock makes a whole run deterministic.
class Clock {
 public:
  virtual ~Clock() = default;
  virtual TimePoint now() const = 0;
  virtual void sleep_for(Duration d) = 0;
};

class SystemClock final : public Clock {
 public:
  TimePoint now() const override { return std::chrono::steady_clock::now(); }
  void sleep_for(Duration d) override;

  static SystemClock& instance();
};

// Starts at the steady_clock epoch and only moves when told to. When a
// sim::Scheduler is attached and the caller is one of its tasks, sleep_for
// parks the task until the scheduler reaches the wake-up time; any other
// caller advances the clock directly.
class VirtualClock final : public Clock {
 public:
  VirtualClock() = default;
  VirtualClock(const VirtualClock&) = delete;
  VirtualClock& operator=(const VirtualClock&) = delete;

  TimePoint now() const override {
    return TimePoint(Duration(ns_.load(std::memory_order_acquire)));
  }
  void sleep_for(Duration d) override;

  void advance(Duration d);
  // Moves forward to t; earlier values are ignored.
  void advance_to(TimePoint t);

  sim::Scheduler* scheduler() const { return scheduler_; }

 private:
  friend class sim::Scheduler;

  std::atomic<Duration::rep> ns_{0};
  sim::Scheduler* scheduler_ = nullptr;
};

Duration elapsed_since_epoch(TimePoint t);

// Runs work that a request handler defers, such as stale-while-revalidate
// regeneration.
class Executor {
 public:
  virtual ~Executor() = default;
  virtual void post(std::function<void()> task) = 0;
};

// Queues tasks until run_pending() is called. Used by single-threaded
// deterministic tests, where background work runs in program order.
class ManualExecutor final : public Executor {
 public:
  void post(std::function<void()> task) override;
  // Runs queued tasks, including ones posted while running, and returns how
  // many ran.
  std::size_t run_pending();
  std::size_t pending() const;

 private:
  mutable std::mutex mu_;
  std::deque<std::function<void()>> queue_;
};

// One thread per task. The destructor joins everything still running.
class ThreadExecutor final : public Executor {
 public:
  ThreadExecutor() = default;
  ThreadExecutor(const ThreadExecutor&) = delete;
  ThreadExecutor& operator=(const ThreadExecutor&) = delete;
  ~ThreadExecutor() override;

  void post(std::function<void()> task) override;
  // Blocks until every posted task has finished.
  void drain();

 private:
  void reap_locked();

  std::mutex mu_;
  std::condition_variable idle_;
  std::size_t running_ = 0;
  std::list<std::thread> threads_;
  std::list<std::thread::id> finished_;
};

}  // namespace edgelab

#endif  // EDGELAB_CLOCK_HPP_
