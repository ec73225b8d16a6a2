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

#ifndef EDGELAB_SIM_HPP_
#define EDGELAB_SIM_HPP_

#include <cstdint>
#include <exception>
#include <functional>
#include <memory>
#include <mutex>
#include <queue>
#include <random>
#include <semaphore>
#include <thread>
#include <vector>

#include "edgelab/clock.hpp"

namespace edgelab::sim {

// Discrete-event scheduler over a VirtualClock.
//
// Every task runs on its own thread, but only one task runs at a time: the
// scheduler hands a baton to the task with the earliest wake-up time, moves
// the clock there, and waits until the task either finishes or parks itself
// in VirtualClock::sleep_for. Execution is therefore sequential and fully
// reproducible, while code under test still sees real concurrency in the
// sense that requests interleave at every sleep point.
//
// Tasks must not hold a lock across sleep_for; another task blocking on that
// lock would never hand the baton back.
class Scheduler final : public Executor {
 public:
  enum class TieBreak {
    kFifo,    // equal wake-up times run in spawn/park order
    kRandom,  // equal wake-up times run in seeded random order
  };

  explicit Scheduler(VirtualClock& clock, TieBreak tie_break = TieBreak::kFifo,
                     std::uint64_t seed = 0);
  Scheduler(const Scheduler&) = delete;
  Scheduler& operator=(const Scheduler&) = delete;
  // Runs whatever is still queued, then detaches from the clock.
  ~Scheduler() override;

  // Executor: the task becomes runnable at the current virtual time.
  void post(std::function<void()> task) override;
  void spawn_at(TimePoint start, std::function<void()> task);

  // Runs until no task is runnable. Rethrows the first exception a task
  // raised, after all tasks have finished. Must not be called from a task.
  void run();

  std::size_t live_tasks() const;
  VirtualClock& clock() { return clock_; }

  // The scheduler whose task is running on this thread, if any.
  static Scheduler* current();

 private:
  friend class edgelab::VirtualClock;
  struct Task;
  struct Entry {
    TimePoint wake;
    std::uint64_t order;
    Task* task;
    bool operator>(const Entry& o) const {
      return wake != o.wake ? wake > o.wake : order > o.order;
    }
  };

  void sleep_until(TimePoint t);
  void enqueue_locked(Task* task, TimePoint wake);
  void task_main(Task* task);

  static thread_local Task* current_task_;

  VirtualClock& clock_;
  TieBreak tie_break_;
  std::mt19937_64 rng_;
  std::uint64_t seq_ = 0;

  mutable std::mutex mu_;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> ready_;
  std::vector<std::unique_ptr<Task>> tasks_;
  std::binary_semaphore yielded_{0};
  std::exception_ptr first_error_;
  bool running_ = false;
};

}  // namespace edgelab::sim

#endif  // EDGELAB_SIM_HPP_
