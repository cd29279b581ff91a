#include <stdio.h>
#include <stdlib.h>

int main(int argc, char **argv) {
    int count = 3;
    if (argc > 1) {
        count = atoi(argv[1]);
    }
    /*@transplant:feat_sum*/
    printf("host %d\n", count);
    return count % 7;
}
