#include "pec/session.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return pec::session::run_cli(argc, argv, std::cout, std::cerr);
}
