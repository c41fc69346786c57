package com.shop.util;

public class Logger {
    private final String name;

    public Logger(String name) {
        this.name = name;
    }

    public void info(String message) {
        System.err.println("[" + name + "] " + message);
    }
}
