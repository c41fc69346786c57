package com.shop.service;

import com.shop.repo.OrderRepository;
import com.shop.model.Order;
import com.shop.model.Customer;
import com.shop.payment.PaymentGateway;
import com.shop.util.Logger;

public class OrderService {
    private final OrderRepository repo = new OrderRepository();
    private final PaymentGateway payments = new PaymentService();
    private final Logger log = new Logger("orders");

    public void checkout(CartService cart) {
        Order order = new Order(new Customer("guest"), cart.total());
        payments.charge(order.total());
        repo.save(order);
        log.info("order placed");
    }

    public void report() {
        log.info(repo.count() + " orders");
    }
}
