#include <stdio.h>

int feat_edit(int n);

int main(void) {
    int n = 4;
    int r = feat_edit(n);
    printf("done %d\n", r);
    return 0;
}
