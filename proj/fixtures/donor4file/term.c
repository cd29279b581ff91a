int term_width(void) {
    return 80;
}
