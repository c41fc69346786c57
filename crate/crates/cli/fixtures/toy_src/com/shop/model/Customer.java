package com.shop.model;

public class Customer {
    private final String name;

    public Customer(String name) {
        this.name = name;
    }
}
