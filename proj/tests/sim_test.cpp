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

#include <gtest/gtest.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace edgelab {
namespace {

using std::chrono::milliseconds;

Duration since_epoch(const VirtualClock& c) { return c.now().time_since_epoch(); }

TEST(VirtualClockTest, SleepAdvancesWithoutScheduler) {
  VirtualClock clock;
  clock.sleep_for(milliseconds(5));
  clock.sleep_for(milliseconds(-5));
  EXPECT_EQ(since_epoch(clock), milliseconds(5));
  clock.advance_to(TimePoint(milliseconds(3)));
  EXPECT_EQ(since_epoch(clock), milliseconds(5));
  clock.advance_to(TimePoint(milliseconds(9)));
  EXPECT_EQ(since_epoch(clock), milliseconds(9));
}

TEST(SchedulerTest, WakesInTimeOrder) {
  VirtualClock clock;
  sim::Scheduler sched(clock);
  std::vector<std::string> log;
  sched.post([&] {
    clock.sleep_for(milliseconds(30));
    log.push_back("a@" + std::to_string(since_epoch(clock).count() / 1000000));
  });
  sched.post([&] {
    clock.sleep_for(milliseconds(10));
    log.push_back("b@" + std::to_string(since_epoch(clock).count() / 1000000));
    clock.sleep_for(milliseconds(10));
    log.push_back("b@" + std::to_string(since_epoch(clock).count() / 1000000));
  });
  sched.run();
  EXPECT_EQ(log, (std::vector<std::string>{"b@10", "b@20", "a@30"}));
  EXPECT_EQ(sched.live_tasks(), 0u);
}

TEST(SchedulerTest, FifoTieBreak) {
  VirtualClock clock;
  sim::Scheduler sched(clock);
  std::vector<int> order;
  for (int i = 0; i < 8; ++i) sched.post([&, i] { order.push_back(i); });
  sched.run();
  EXPECT_EQ(order, (std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7}));
}

std::vector<int> random_order(std::uint64_t seed) {
  VirtualClock clock;
  sim::Scheduler sched(clock, sim::Scheduler::TieBreak::kRandom, seed);
  std::vector<int> order;
  for (int i = 0; i < 16; ++i) sched.post([&, i] { order.push_back(i); });
  sched.run();
  return order;
}

TEST(SchedulerTest, RandomTieBreakIsSeeded) {
  EXPECT_EQ(random_order(5), random_order(5));
  bool any_differs = false;
  for (std::uint64_t s = 0; s < 8 && !any_differs; ++s) any_differs = random_order(s) != random_order(s + 100);
  EXPECT_TRUE(any_differs);
  auto sorted = random_order(1);
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < 16; ++i) EXPECT_EQ(sorted[i], i);
}

TEST(SchedulerTest, SpawnAtStartsLater) {
  VirtualClock clock;
  sim::Scheduler sched(clock);
  Duration seen{};
  sched.spawn_at(TimePoint(milliseconds(250)), [&] { seen = since_epoch(clock); });
  sched.run();
  EXPECT_EQ(seen, milliseconds(250));
}

TEST(SchedulerTest, TasksMayPostTasks) {
  VirtualClock clock;
  sim::Scheduler sched(clock);
  int ran = 0;
  sched.post([&] {
    clock.sleep_for(milliseconds(1));
    sched.post([&] { ++ran; });
    ++ran;
  });
  sched.run();
  EXPECT_EQ(ran, 2);
}

TEST(SchedulerTest, RethrowsTaskError) {
  VirtualClock clock;
  sim::Scheduler sched(clock);
  bool other_finished = false;
  sched.post([] { throw std::runtime_error("boom"); });
  sched.post([&] {
    clock.sleep_for(milliseconds(1));
    other_finished = true;
  });
  EXPECT_THROW(sched.run(), std::runtime_error);
  EXPECT_TRUE(other_finished);
}

TEST(SchedulerTest, OneSchedulerPerClock) {
  VirtualClock clock;
  sim::Scheduler sched(clock);
  EXPECT_THROW(sim::Scheduler second(clock), std::exception);
  EXPECT_EQ(clock.scheduler(), &sched);
}

TEST(SchedulerTest, CurrentIsSetInsideTasks) {
  VirtualClock clock;
  sim::Scheduler sched(clock);
  sim::Scheduler* inside = nullptr;
  sched.post([&] { inside = sim::Scheduler::current(); });
  sched.run();
  EXPECT_EQ(inside, &sched);
  EXPECT_EQ(sim::Scheduler::current(), nullptr);
}

TEST(ManualExecutorTest, RunsQueuedWork) {
  ManualExecutor ex;
  int n = 0;
  ex.post([&] {
    ++n;
    ex.post([&] { ++n; });
  });
  EXPECT_EQ(ex.pending(), 1u);
  EXPECT_EQ(ex.run_pending(), 2u);
  EXPECT_EQ(n, 2);
}

TEST(ThreadExecutorTest, DrainWaitsForAll) {
  ThreadExecutor ex;
  std::atomic<int> n{0};
  for (int i = 0; i < 20; ++i) ex.post([&] { ++n; });
  ex.drain();
  EXPECT_EQ(n.load(), 20);
}

}  // namespace
}  // namespace edgelab
