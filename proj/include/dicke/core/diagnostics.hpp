// diagnostics.hpp — warning sink shared by all modules

#pragma once

#include <functional>
#include <iostream>
#include <mutex>
#include <string>
#include <string_view>

namespace dicke {

using WarningHandler = std::function<void(std::string_view)>;

namespace detail {

struct WarningState {
    std::mutex mutex;
    WarningHandler handler = [](std::string_view msg) {
        std::cerr << "warning: " << msg << '\n';
    };
};

inline WarningState& warning_state() {
    static WarningState state;
    return state;
}

} // namespace detail

/// Replace the process-wide warning handler; returns the previous one.
inline WarningHandler set_warning_handler(WarningHandler handler) {
    auto& st = detail::warning_state();
    std::lock_guard lock(st.mutex);
    std::swap(st.handler, handler);
    return handler;
}

inline void warn(std::string_view message) {
    auto& st = detail::warning_state();
    std::lock_guard lock(st.mutex);
    if (st.handler) st.handler(message);
}

/// Installs a handler for the lifetime of the guard (tests use it to capture warnings).
class ScopedWarningHandler {
public:
    explicit ScopedWarningHandler(WarningHandler handler)
        : previous_(set_warning_handler(std::move(handler))) {}
    ~ScopedWarningHandler() { set_warning_handler(std::move(previous_)); }
    ScopedWarningHandler(const ScopedWarningHandler&) = delete;
    ScopedWarningHandler& operator=(const ScopedWarningHandler&) = delete;

private:
    WarningHandler previous_;
};

} // namespace dicke
