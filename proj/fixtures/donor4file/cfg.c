int tab_stop = 8;
