#include <stdio.h>
#include "util.h"

int feat_sum(int n) {
    int total = 0;
    int i = 1;
    while (i <= n) {
        total = add(total, i);
        i = i + 1;
    }
    printf("sum=%d\n", total);
    return total;
}

int main(void) {
    int n = 3;
    int r = feat_sum(n);
    printf("done %d\n", r);
    return 0;
}
