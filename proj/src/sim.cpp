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

#include "edgelab/sim.hpp"

#include <algorithm>
#include <stdexcept>

namespace edgelab::sim {
namespace {

thread_local Scheduler* tl_scheduler = nullptr;

}  // namespace

struct Scheduler::Task {
  std::function<void()> fn;
  std::binary_semaphore resume{0};
  std::thread thread;
  bool done = false;
};

thread_local Scheduler::Task* Scheduler::current_task_ = nullptr;

Scheduler::Scheduler(VirtualClock& clock, TieBreak tie_break, std::uint64_t seed)
    : clock_(clock), tie_break_(tie_break), rng_(seed) {
  if (clock_.scheduler_ != nullptr) {
    throw std::logic_error("virtual clock already has a scheduler");
  }
  clock_.scheduler_ = this;
}

Scheduler::~Scheduler() {
  try {
    run();
  } catch (...) {
  }
  clock_.scheduler_ = nullptr;
}

Scheduler* Scheduler::current() { return tl_scheduler; }

void Scheduler::post(std::function<void()> task) {
  spawn_at(clock_.now(), std::move(task));
}

void Scheduler::spawn_at(TimePoint start, std::function<void()> fn) {
  auto task = std::make_unique<Task>();
  task->fn = std::move(fn);
  Task* raw = task.get();
  std::lock_guard lock(mu_);
  tasks_.push_back(std::move(task));
  enqueue_locked(raw, std::max(start, clock_.now()));
  raw->thread = std::thread(&Scheduler::task_main, this, raw);
}

void Scheduler::enqueue_locked(Task* task, TimePoint wake) {
  const std::uint64_t order =
      tie_break_ == TieBreak::kFifo ? seq_++ : static_cast<std::uint64_t>(rng_());
  ready_.push(Entry{wake, order, task});
}

void Scheduler::task_main(Task* task) {
  task->resume.acquire();
  tl_scheduler = this;
  current_task_ = task;
  try {
    task->fn();
  } catch (...) {
    std::lock_guard lock(mu_);
    if (!first_error_) first_error_ = std::current_exception();
  }
  task->fn = nullptr;
  task->done = true;
  yielded_.release();
}

void Scheduler::sleep_until(TimePoint t) {
  Task* self = current_task_;
  {
    std::lock_guard lock(mu_);
    enqueue_locked(self, std::max(t, clock_.now()));
  }
  yielded_.release();
  self->resume.acquire();
}

void Scheduler::run() {
  if (current() == this) throw std::logic_error("Scheduler::run called from a task");
  {
    std::lock_guard lock(mu_);
    if (running_) throw std::logic_error("Scheduler::run is not reentrant");
    running_ = true;
  }
  for (;;) {
    Entry next;
    {
      std::lock_guard lock(mu_);
      if (ready_.empty()) break;
      next = ready_.top();
      ready_.pop();
    }
    clock_.advance_to(next.wake);
    next.task->resume.release();
    yielded_.acquire();
    if (next.task->done) {
      next.task->thread.join();
      std::lock_guard lock(mu_);
      std::erase_if(tasks_, [&](const auto& t) { return t.get() == next.task; });
    }
  }
  std::exception_ptr error;
  {
    std::lock_guard lock(mu_);
    running_ = false;
    std::swap(error, first_error_);
  }
  if (error) std::rethrow_exception(error);
}

std::size_t Scheduler::live_tasks() const {
  std::lock_guard lock(mu_);
  return tasks_.size();
}

}  // namespace edgelab::sim
