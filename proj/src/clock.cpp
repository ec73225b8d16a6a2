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

#include "edgelab/clock.hpp"

#include <algorithm>

#include "edgelab/sim.hpp"

namespace edgelab {

void SystemClock::sleep_for(Duration d) {
  if (d > Duration::zero()) std::this_thread::sleep_for(d);
}

SystemClock& SystemClock::instance() {
  static SystemClock clock;
  return clock;
}

void VirtualClock::sleep_for(Duration d) {
  d = std::max(d, Duration::zero());
  sim::Scheduler* s = scheduler_;
  if (s != nullptr && sim::Scheduler::current() == s) {
    s->sleep_until(now() + d);
  } else {
    advance(d);
  }
}

void VirtualClock::advance(Duration d) {
  if (d > Duration::zero()) ns_.fetch_add(d.count(), std::memory_order_acq_rel);
}

void VirtualClock::advance_to(TimePoint t) {
  const Duration::rep target = t.time_since_epoch().count();
  Duration::rep cur = ns_.load(std::memory_order_acquire);
  while (cur < target &&
         !ns_.compare_exchange_weak(cur, target, std::memory_order_acq_rel)) {
  }
}

Duration elapsed_since_epoch(TimePoint t) {
  return std::chrono::duration_cast<Duration>(t.time_since_epoch());
}

void ManualExecutor::post(std::function<void()> task) {
  std::lock_guard lock(mu_);
  queue_.push_back(std::move(task));
}

std::size_t ManualExecutor::run_pending() {
  std::size_t ran = 0;
  for (;;) {
    std::function<void()> task;
    {
      std::lock_guard lock(mu_);
      if (queue_.empty()) break;
      task = std::move(queue_.front());
      queue_.pop_front();
    }
    task();
    ++ran;
  }
  return ran;
}

std::size_t ManualExecutor::pending() const {
  std::lock_guard lock(mu_);
  return queue_.size();
}

ThreadExecutor::~ThreadExecutor() {
  drain();
  std::lock_guard lock(mu_);
  for (auto& t : threads_) {
    if (t.joinable()) t.join();
  }
}

void ThreadExecutor::post(std::function<void()> task) {
  std::lock_guard lock(mu_);
  reap_locked();
  ++running_;
  threads_.emplace_back([this, task = std::move(task)] {
    try {
      task();
    } catch (...) {
      // Background work reports failures through its own state.
    }
    std::lock_guard inner(mu_);
    finished_.push_back(std::this_thread::get_id());
    if (--running_ == 0) idle_.notify_all();
  });
}

void ThreadExecutor::drain() {
  std::unique_lock lock(mu_);
  idle_.wait(lock, [this] { return running_ == 0; });
  reap_locked();
}

void ThreadExecutor::reap_locked() {
  for (const auto id : finished_) {
    auto it = std::find_if(threads_.begin(), threads_.end(),
                           [id](const std::thread& t) { return t.get_id() == id; });
    if (it != threads_.end()) {
      it->join();
      threads_.erase(it);
    }
  }
  finished_.clear();
}

}  // namespace edgelab
