#include "qbary_cli.hpp"

int main(int argc, char** argv)
{
    return qbary::cli::execute(std::vector<std::string>(argv + 1, argv + argc));
}
