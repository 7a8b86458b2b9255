#include <cstdio>

int main() {
    std::puts("empathy-games: scaffolding");
    return 0;
}
