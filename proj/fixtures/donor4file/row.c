extern int tab_stop;

int row_len(int w) {
    return w - tab_stop;
}
