package com.shop.model;

public class Order {
    private final Customer customer;
    private final Money total;

    public Order(Customer customer, Money total) {
        this.customer = customer;
        this.total = total;
    }

    public Money total() {
        return total;
    }
}
