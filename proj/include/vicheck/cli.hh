#pragma once

#include <ostream>

namespace vicheck
{
    enum ExitCode
    {
        exit_satisfiable = 0,
        exit_unsatisfiable = 1,
        exit_input_error = 2,
        exit_budget = 3,
        exit_io_error = 4
    };

    auto run_cli(int argc, const char * const * argv, std::ostream & out, std::ostream & err) -> int;
}
